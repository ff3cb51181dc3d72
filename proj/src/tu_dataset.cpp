#include "evokernel/tu_dataset.hpp"
#include "evokernel/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>

namespace evk {

namespace fs = std::filesystem;

namespace {

struct Line {
    std::size_t number;
    std::vector<long> values;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Reads comma-separated integers, one record per non-blank line.
std::vector<Line> read_records(const fs::path& path, std::size_t arity) {
    std::ifstream in(path);
    if (!in) {
        throw IngestionError("cannot open " + path.string());
    }
    std::vector<Line> records;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::string_view rest = trim(raw);
        if (rest.empty()) {
            continue;
        }
        Line line{number, {}};
        while (true) {
            const auto comma = rest.find(',');
            const auto field = trim(rest.substr(0, comma));
            long value = 0;
            const auto* end = field.data() + field.size();
            auto [ptr, ec] = std::from_chars(field.data(), end, value);
            if (field.empty() || ec != std::errc{} || ptr != end) {
                throw FormatError(path.filename().string() + ":" + std::to_string(number) +
                                  ": expected an integer, got '" + std::string(field) + "'");
            }
            line.values.push_back(value);
            if (comma == std::string_view::npos) {
                break;
            }
            rest = rest.substr(comma + 1);
        }
        if (line.values.size() != arity) {
            throw FormatError(path.filename().string() + ":" + std::to_string(number) +
                              ": expected " + std::to_string(arity) + " values, got " +
                              std::to_string(line.values.size()));
        }
        records.push_back(std::move(line));
    }
    return records;
}

fs::path required(const fs::path& dir, const std::string& name, const std::string& suffix) {
    fs::path p = dir / (name + suffix);
    if (!fs::exists(p)) {
        throw IngestionError("missing dataset file " + p.string());
    }
    return p;
}

} // namespace

GraphDataset make_dataset(std::string name, std::vector<Graph> graphs,
                          const std::vector<long>& raw_labels) {
    if (graphs.size() != raw_labels.size()) {
        throw ContractError("dataset has " + std::to_string(graphs.size()) + " graphs but " +
                            std::to_string(raw_labels.size()) + " labels");
    }
    GraphDataset ds;
    ds.name = std::move(name);
    ds.graphs = std::move(graphs);
    ds.original_labels = raw_labels;
    std::sort(ds.original_labels.begin(), ds.original_labels.end());
    ds.original_labels.erase(std::unique(ds.original_labels.begin(), ds.original_labels.end()),
                             ds.original_labels.end());
    ds.labels.reserve(raw_labels.size());
    for (long raw : raw_labels) {
        const auto it = std::lower_bound(ds.original_labels.begin(), ds.original_labels.end(), raw);
        ds.labels.push_back(static_cast<int>(it - ds.original_labels.begin()));
    }
    return ds;
}

GraphDataset load_tu_dataset(const fs::path& dir, const std::string& name) {
    const auto a_path = required(dir, name, "_A.txt");
    const auto indicator_path = required(dir, name, "_graph_indicator.txt");
    const auto labels_path = required(dir, name, "_graph_labels.txt");
    const fs::path node_labels_path = dir / (name + "_node_labels.txt");

    const auto indicator = read_records(indicator_path, 1);
    const auto graph_labels = read_records(labels_path, 1);
    const auto adjacency = read_records(a_path, 2);
    std::optional<std::vector<Line>> node_labels;
    if (fs::exists(node_labels_path)) {
        node_labels = read_records(node_labels_path, 1);
        if (node_labels->size() != indicator.size()) {
            throw FormatError(node_labels_path.filename().string() + ": " +
                              std::to_string(node_labels->size()) + " labels for " +
                              std::to_string(indicator.size()) + " nodes");
        }
    }

    const std::size_t graph_count = graph_labels.size();
    std::vector<std::size_t> node_graph(indicator.size());
    std::vector<NodeId> local_id(indicator.size());
    std::vector<std::size_t> sizes(graph_count, 0);
    for (std::size_t i = 0; i < indicator.size(); ++i) {
        const long gid = indicator[i].values[0];
        if (gid < 1 || static_cast<std::size_t>(gid) > graph_count) {
            throw FormatError(indicator_path.filename().string() + ":" +
                              std::to_string(indicator[i].number) + ": graph id " +
                              std::to_string(gid) + " outside [1, " +
                              std::to_string(graph_count) + "]");
        }
        node_graph[i] = static_cast<std::size_t>(gid - 1);
        local_id[i] = static_cast<NodeId>(sizes[node_graph[i]]++);
    }

    std::vector<std::vector<Edge>> edges(graph_count);
    for (const auto& rec : adjacency) {
        const long r = rec.values[0];
        const long c = rec.values[1];
        const auto in_range = [&](long id) {
            return id >= 1 && static_cast<std::size_t>(id) <= indicator.size();
        };
        if (!in_range(r) || !in_range(c)) {
            throw FormatError(a_path.filename().string() + ":" + std::to_string(rec.number) +
                              ": node id outside [1, " + std::to_string(indicator.size()) + "]");
        }
        const auto ri = static_cast<std::size_t>(r - 1);
        const auto ci = static_cast<std::size_t>(c - 1);
        if (node_graph[ri] != node_graph[ci]) {
            throw FormatError(a_path.filename().string() + ":" + std::to_string(rec.number) +
                              ": edge (" + std::to_string(r) + ", " + std::to_string(c) +
                              ") joins graphs " + std::to_string(node_graph[ri] + 1) + " and " +
                              std::to_string(node_graph[ci] + 1));
        }
        edges[node_graph[ri]].emplace_back(local_id[ri], local_id[ci]);
    }

    std::vector<std::vector<Label>> labels(graph_count);
    if (node_labels) {
        for (std::size_t i = 0; i < indicator.size(); ++i) {
            labels[node_graph[i]].push_back((*node_labels)[i].values[0]);
        }
    }

    std::vector<Graph> graphs;
    graphs.reserve(graph_count);
    for (std::size_t g = 0; g < graph_count; ++g) {
        // Non-strict: the file lists each undirected edge in both directions.
        graphs.push_back(node_labels ? build_graph(sizes[g], edges[g], std::move(labels[g]), false)
                                     : build_graph(sizes[g], edges[g], false));
    }
    std::vector<long> raw;
    raw.reserve(graph_count);
    for (const auto& rec : graph_labels) {
        raw.push_back(rec.values[0]);
    }
    return make_dataset(name, std::move(graphs), raw);
}

DatasetStats dataset_stats(const GraphDataset& ds) {
    DatasetStats s;
    s.graph_count = ds.size();
    s.class_count = ds.class_count();
    if (ds.size() == 0) {
        return s;
    }
    double nodes = 0.0;
    double edges = 0.0;
    for (const auto& g : ds.graphs) {
        nodes += static_cast<double>(g.node_count());
        edges += static_cast<double>(g.edge_count());
    }
    s.mean_nodes = nodes / static_cast<double>(ds.size());
    s.mean_edges = edges / static_cast<double>(ds.size());
    return s;
}

} // namespace evk
