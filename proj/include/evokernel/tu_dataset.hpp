#pragma once

#include "evokernel/graph.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace evk {

/// Graphs with contiguous 0-based class ids.
struct GraphDataset {
    std::string name;
    std::vector<Graph> graphs;
    std::vector<int> labels;
    /// original_labels[c] is the raw label that class id c was remapped from.
    std::vector<long> original_labels;

    std::size_t size() const noexcept { return graphs.size(); }
    std::size_t class_count() const noexcept { return original_labels.size(); }
};

struct DatasetStats {
    std::size_t graph_count = 0;
    std::size_t class_count = 0;
    double mean_nodes = 0.0;
    double mean_edges = 0.0;
};

DatasetStats dataset_stats(const GraphDataset& ds);

/// Loads `<dir>/<name>_{A,graph_indicator,graph_labels}.txt` and, when present,
/// `<name>_node_labels.txt`.
///
/// Node ids are re-indexed per graph; the two directed copies of each edge
/// collapse to one undirected edge. Graphs without a node-label file are left
/// unlabeled (the embedding falls back to degree labels).
GraphDataset load_tu_dataset(const std::filesystem::path& dir, const std::string& name);

/// Builds a dataset from in-memory graphs, remapping labels to 0..k-1.
GraphDataset make_dataset(std::string name, std::vector<Graph> graphs,
                          const std::vector<long>& raw_labels);

} // namespace evk
