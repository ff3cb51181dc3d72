#include "evokernel/graph.hpp"
#include "evokernel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace evk {

namespace {

std::string edge_string(const Edge& e) {
    return "(" + std::to_string(e.first) + ", " + std::to_string(e.second) + ")";
}

} // namespace

Graph build_graph(std::size_t n, std::span<const Edge> edges, bool strict) {
    Graph g;
    g.adjacency_.resize(n);
    g.edges_.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.first >= n || e.second >= n) {
            throw ConstructionError("edge " + edge_string(e) + " references a node outside [0, " +
                                    std::to_string(n) + ")");
        }
        if (e.first == e.second) {
            if (strict) {
                throw ConstructionError("self-loop " + edge_string(e));
            }
            continue;
        }
        g.edges_.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end());
    if (dup != g.edges_.end()) {
        if (strict) {
            throw ConstructionError("duplicate edge " + edge_string(*dup));
        }
        g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
    }
    for (const auto& [u, v] : g.edges_) {
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto& nbrs : g.adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
    }
    return g;
}

Graph build_graph(std::size_t n, std::span<const Edge> edges, std::vector<Label> labels,
                  bool strict) {
    if (labels.size() != n) {
        throw ConstructionError("expected " + std::to_string(n) + " node labels, got " +
                                std::to_string(labels.size()));
    }
    Graph g = build_graph(n, edges, strict);
    g.labels_ = std::move(labels);
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= node_count() || v >= node_count()) {
        return false;
    }
    const auto& nbrs = adjacency_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
    const auto n = static_cast<Eigen::Index>(node_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [u, v] : edges_) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    return a;
}

Graph Graph::induced_subgraph(const std::vector<bool>& keep) const {
    if (keep.size() != node_count()) {
        throw ConstructionError("keep mask has " + std::to_string(keep.size()) +
                                " entries for a graph with " + std::to_string(node_count()) +
                                " nodes");
    }
    constexpr NodeId dropped = static_cast<NodeId>(-1);
    std::vector<NodeId> remap(node_count(), dropped);
    NodeId next = 0;
    for (std::size_t v = 0; v < node_count(); ++v) {
        if (keep[v]) {
            remap[v] = next++;
        }
    }
    std::vector<Edge> kept;
    for (const auto& [u, v] : edges_) {
        if (remap[u] != dropped && remap[v] != dropped) {
            kept.emplace_back(remap[u], remap[v]);
        }
    }
    if (!labels_) {
        return build_graph(next, kept);
    }
    std::vector<Label> labels;
    labels.reserve(next);
    for (std::size_t v = 0; v < node_count(); ++v) {
        if (keep[v]) {
            labels.push_back((*labels_)[v]);
        }
    }
    return build_graph(next, kept, std::move(labels));
}

Graph Graph::permuted(std::span<const NodeId> perm) const {
    if (perm.size() != node_count()) {
        throw ConstructionError("permutation size mismatch");
    }
    std::vector<Edge> moved;
    moved.reserve(edges_.size());
    for (const auto& [u, v] : edges_) {
        moved.emplace_back(perm[u], perm[v]);
    }
    if (!labels_) {
        return build_graph(node_count(), moved);
    }
    std::vector<Label> labels(node_count());
    for (std::size_t v = 0; v < node_count(); ++v) {
        labels[perm[v]] = (*labels_)[v];
    }
    return build_graph(node_count(), moved, std::move(labels));
}

DegreeProfile degree_profile(const Graph& g) {
    DegreeProfile p;
    p.degrees.resize(g.node_count());
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        p.degrees[v] = g.degree(static_cast<NodeId>(v));
    }
    p.volume = std::accumulate(p.degrees.begin(), p.degrees.end(), std::size_t{0});
    return p;
}

NormalizedLaplacian normalized_laplacian(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::VectorXd inv_sqrt(n);
    for (Eigen::Index v = 0; v < n; ++v) {
        const auto d = g.degree(static_cast<NodeId>(v));
        inv_sqrt(v) = d > 0 ? 1.0 / std::sqrt(static_cast<double>(d)) : 0.0;
    }
    NormalizedLaplacian lap{Eigen::MatrixXd::Zero(n, n)};
    for (Eigen::Index v = 0; v < n; ++v) {
        if (g.degree(static_cast<NodeId>(v)) > 0) {
            lap.matrix(v, v) = 1.0;
        }
    }
    for (const auto& [u, v] : g.edges()) {
        const double w = -inv_sqrt(u) * inv_sqrt(v);
        lap.matrix(u, v) = w;
        lap.matrix(v, u) = w;
    }
    return lap;
}

Eigen::MatrixXd combinatorial_laplacian(const Graph& g) {
    Eigen::MatrixXd l = -g.adjacency_matrix();
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        l(v, v) = static_cast<double>(g.degree(static_cast<NodeId>(v)));
    }
    return l;
}

std::size_t connected_components(const Graph& g) {
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> stack;
    std::size_t components = 0;
    for (std::size_t s = 0; s < g.node_count(); ++s) {
        if (seen[s]) {
            continue;
        }
        ++components;
        seen[s] = true;
        stack.push_back(static_cast<NodeId>(s));
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            for (NodeId w : g.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

} // namespace evk
