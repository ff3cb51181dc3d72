#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace evk {

using NodeId = std::uint32_t;
using Label = std::int64_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph.
///
/// Edges are stored canonically as (u, v) with u < v, sorted
/// lexicographically. Node labels are optional; when present there is
/// exactly one per node.
class Graph {
public:
    Graph() = default;

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
    std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
    bool has_edge(NodeId u, NodeId v) const;

    bool has_labels() const noexcept { return labels_.has_value(); }
    /// Requires has_labels().
    std::span<const Label> labels() const { return *labels_; }

    /// Dense symmetric 0/1 adjacency matrix.
    Eigen::MatrixXd adjacency_matrix() const;

    /// Subgraph induced by the nodes with keep[v] == true, re-packed to
    /// 0-based ids in increasing source order. Labels are carried over.
    Graph induced_subgraph(const std::vector<bool>& keep) const;

    /// Graph with node v renamed to perm[v].
    Graph permuted(std::span<const NodeId> perm) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.edges_ == b.edges_ && a.adjacency_.size() == b.adjacency_.size() &&
               a.labels_ == b.labels_;
    }

private:
    friend Graph build_graph(std::size_t, std::span<const Edge>, bool);
    friend Graph build_graph(std::size_t, std::span<const Edge>, std::vector<Label>, bool);

    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::optional<std::vector<Label>> labels_;
};

/// Builds a graph on `n` nodes.
///
/// Out-of-range endpoints always throw ConstructionError naming the edge.
/// With `strict`, self-loops and duplicate edges (in either orientation)
/// also throw; otherwise self-loops are dropped and duplicates collapsed.
Graph build_graph(std::size_t n, std::span<const Edge> edges, bool strict = true);
Graph build_graph(std::size_t n, std::span<const Edge> edges, std::vector<Label> labels,
                  bool strict = true);

struct DegreeProfile {
    std::vector<std::size_t> degrees;
    std::size_t volume = 0;
};

DegreeProfile degree_profile(const Graph& g);

/// I - D^{-1/2} A D^{-1/2}, with D^{-1/2}(i,i) = 0 for isolated nodes.
struct NormalizedLaplacian {
    Eigen::MatrixXd matrix;
};

NormalizedLaplacian normalized_laplacian(const Graph& g);

/// Combinatorial Laplacian D - A.
Eigen::MatrixXd combinatorial_laplacian(const Graph& g);

/// Number of connected components (isolated nodes count as components).
std::size_t connected_components(const Graph& g);

} // namespace evk
