#pragma once

#include "evokernel/tu_dataset.hpp"
#include "oracles.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace evk::testing {

inline Graph triangle() { return cycle_graph(3); }

/// Three triangles labeled 0, three 3-leaf stars labeled 1.
inline GraphDataset triangle_star_dataset() {
    std::vector<Graph> graphs;
    std::vector<long> labels;
    for (int i = 0; i < 3; ++i) {
        graphs.push_back(triangle());
        labels.push_back(0);
    }
    for (int i = 0; i < 3; ++i) {
        graphs.push_back(star_graph(3));
        labels.push_back(1);
    }
    return make_dataset("TRISTAR", std::move(graphs), labels);
}

/// Writes graphs in TU format (1-based ids, both edge directions).
inline void write_tu_dataset(const std::filesystem::path& dir, const std::string& name,
                             const std::vector<Graph>& graphs, const std::vector<long>& labels) {
    std::filesystem::create_directories(dir);
    std::ofstream a(dir / (name + "_A.txt"));
    std::ofstream ind(dir / (name + "_graph_indicator.txt"));
    std::ofstream gl(dir / (name + "_graph_labels.txt"));
    std::size_t offset = 0;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Graph& g = graphs[gi];
        for (const auto& [u, v] : g.edges()) {
            a << offset + u + 1 << ", " << offset + v + 1 << "\n";
            a << offset + v + 1 << ", " << offset + u + 1 << "\n";
        }
        for (std::size_t v = 0; v < g.node_count(); ++v) {
            ind << gi + 1 << "\n";
        }
        gl << labels[gi] << "\n";
        offset += g.node_count();
    }
}

inline std::filesystem::path scratch_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("evokernel_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path mutag_dir() { return std::filesystem::path(EVK_DATA_DIR) / "MUTAG"; }

} // namespace evk::testing
