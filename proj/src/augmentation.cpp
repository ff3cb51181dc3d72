#include "evokernel/augmentation.hpp"
#include "evokernel/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace evk {

HeatDistribution heat_distribution(const HeatState& state, const BoltzmannConfig& cfg) {
    const auto n = state.heat.size();
    HeatDistribution dist{state.t, Eigen::VectorXd(n), Eigen::VectorXd(n)};
    if (n == 0) {
        return dist;
    }
    if (!state.heat.allFinite()) {
        throw DomainError("heat vector at t = " + std::to_string(state.t) +
                          " contains non-finite values");
    }
    // -E(u) = -a u - b; the constant -b cancels against Z, and subtracting
    // the largest exponent keeps exp() in range.
    const Eigen::VectorXd neg_energy = -cfg.a * state.heat;
    const double top = neg_energy.maxCoeff();
    const Eigen::VectorXd weights = (neg_energy.array() - top).exp().matrix();
    dist.probs = weights / weights.sum();
    dist.normed = dist.probs / dist.probs.maxCoeff();
    return dist;
}

std::vector<bool> draw_keep_mask(const HeatDistribution& dist, StreamRng& rng) {
    std::vector<bool> keep(static_cast<std::size_t>(dist.normed.size()));
    for (Eigen::Index i = 0; i < dist.normed.size(); ++i) {
        keep[static_cast<std::size_t>(i)] = rng.bernoulli(dist.normed(i));
    }
    return keep;
}

Graph drop_node(const Graph& g, const HeatDistribution& dist, StreamRng& rng) {
    if (static_cast<std::size_t>(dist.normed.size()) != g.node_count()) {
        throw ContractError("heat distribution has " + std::to_string(dist.normed.size()) +
                            " entries for a graph with " + std::to_string(g.node_count()) +
                            " nodes");
    }
    return g.induced_subgraph(draw_keep_mask(dist, rng));
}

namespace {

void validate_grid(const std::vector<double>& times) {
    if (times.empty() || times.front() != 0.0) {
        throw ConfigError("episode time grid must start at t = 0");
    }
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) {
            throw ConfigError("episode time grid must be strictly ascending (t[" +
                              std::to_string(k) + "] = " + std::to_string(times[k]) + ")");
        }
    }
}

std::vector<bool> keep_step(const Graph& g, double t, const BoltzmannConfig& cfg, double u0,
                            const EpisodeOptions& options, StreamRng& rng) {
    if (g.node_count() == 0) {
        return {};
    }
    const auto lap = normalized_laplacian(g);
    const auto spec = spectral_decompose(lap);
    const auto hk = heat_kernel(lap, spec, t, options.method, options.thresholds);
    return draw_keep_mask(heat_distribution(propagate_heat(hk, u0), cfg), rng);
}

} // namespace

TemporalEpisode generate_episode(const Graph& g, const std::vector<double>& times,
                                 const BoltzmannConfig& cfg, double u0, std::uint64_t seed,
                                 const EpisodeOptions& options) {
    validate_grid(times);
    if (!(u0 > 0.0) || !std::isfinite(u0)) {
        throw ConfigError("initial heat u0 must be positive, got " + std::to_string(u0));
    }
    TemporalEpisode ep;
    ep.source = g;
    ep.times = times;
    ep.seed = seed;
    ep.graph_index = options.graph_index;
    ep.snapshots.reserve(times.size());
    ep.kept_masks.reserve(times.size());

    const auto stream = [&](std::size_t k) {
        return StreamRng::derive(seed, StreamPurpose::Augmentation, {options.graph_index, k});
    };

    if (!options.cumulative) {
        const auto lap = normalized_laplacian(g);
        const auto spec = spectral_decompose(lap);
        for (std::size_t k = 0; k < times.size(); ++k) {
            auto rng = stream(k);
            std::vector<bool> keep;
            if (g.node_count() > 0) {
                const auto hk = heat_kernel(lap, spec, times[k], options.method, options.thresholds);
                keep = draw_keep_mask(heat_distribution(propagate_heat(hk, u0), cfg), rng);
            }
            ep.snapshots.push_back(g.induced_subgraph(keep));
            ep.kept_masks.push_back(std::move(keep));
        }
        return ep;
    }

    Graph current = g;
    std::vector<NodeId> origin(g.node_count());
    for (std::size_t v = 0; v < origin.size(); ++v) {
        origin[v] = static_cast<NodeId>(v);
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        auto rng = stream(k);
        const double step = k == 0 ? 0.0 : times[k] - times[k - 1];
        const auto keep = keep_step(current, step, cfg, u0, options, rng);
        std::vector<bool> mask(g.node_count(), false);
        std::vector<NodeId> next_origin;
        for (std::size_t v = 0; v < keep.size(); ++v) {
            if (keep[v]) {
                mask[origin[v]] = true;
                next_origin.push_back(origin[v]);
            }
        }
        current = current.induced_subgraph(keep);
        origin = std::move(next_origin);
        ep.snapshots.push_back(current);
        ep.kept_masks.push_back(std::move(mask));
    }
    return ep;
}

std::vector<double> time_grid(double length, double interval) {
    if (!(interval > 0.0) || !std::isfinite(interval)) {
        throw ConfigError("time interval must be positive");
    }
    if (!(length >= 0.0) || !std::isfinite(length)) {
        throw ConfigError("time length must be non-negative");
    }
    const auto steps = static_cast<std::size_t>(std::floor(length / interval * (1.0 + 1e-9) + 1e-9));
    std::vector<double> grid(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        grid[k] = static_cast<double>(k) * interval;
    }
    return grid;
}

void write_episode_jsonl(std::ostream& out, const TemporalEpisode& episode) {
    for (std::size_t k = 0; k < episode.length(); ++k) {
        const auto& mask = episode.kept_masks[k];
        std::vector<NodeId> kept;
        for (std::size_t v = 0; v < mask.size(); ++v) {
            if (mask[v]) {
                kept.push_back(static_cast<NodeId>(v));
            }
        }
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& [u, v] : episode.snapshots[k].edges()) {
            edges.push_back({kept[u], kept[v]});
        }
        const nlohmann::json record = {
            {"index", k},
            {"time", episode.times[k]},
            {"seed", episode.seed},
            {"graph", episode.graph_index},
            {"kept", kept},
            {"edges", edges},
        };
        out << record.dump() << '\n';
    }
}

TemporalEpisode read_episode_jsonl(std::istream& in, const Graph& source) {
    TemporalEpisode ep;
    ep.source = source;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto fail = [&](const std::string& why) {
            return FormatError("episode record " + std::to_string(number) + ": " + why);
        };
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
            std::vector<bool> mask(source.node_count(), false);
            for (auto v : rec.at("kept").get<std::vector<NodeId>>()) {
                if (v >= source.node_count()) {
                    throw fail("kept node " + std::to_string(v) + " not in source graph");
                }
                mask[v] = true;
            }
            Graph snapshot = source.induced_subgraph(mask);
            const auto edges = rec.at("edges").get<std::vector<std::pair<NodeId, NodeId>>>();
            if (edges.size() != snapshot.edge_count()) {
                throw fail("edge list is not the subgraph induced by the kept nodes");
            }
            for (const auto& [u, v] : edges) {
                if (u >= mask.size() || v >= mask.size() || !mask[u] || !mask[v] ||
                    !source.has_edge(u, v)) {
                    throw fail("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                               ") is not a source edge between kept nodes");
                }
            }
            ep.times.push_back(rec.at("time").get<double>());
            ep.seed = rec.at("seed").get<std::uint64_t>();
            ep.graph_index = rec.at("graph").get<std::uint64_t>();
            ep.snapshots.push_back(std::move(snapshot));
            ep.kept_masks.push_back(std::move(mask));
        } catch (const nlohmann::json::exception& e) {
            throw fail(e.what());
        }
    }
    return ep;
}

} // namespace evk
