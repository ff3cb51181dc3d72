#pragma once

#include "evokernel/graph.hpp"
#include "evokernel/rng.hpp"
#include "evokernel/spectral_heat.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace evk {

/// Energy E(x) = a x + b of the Boltzmann heat distribution.
struct BoltzmannConfig {
    double a = -2.0;
    double b = -2.0;
};

/// P_t(v_i) = exp(-E(u_t(i))) / Z and its divide-by-max normalization.
struct HeatDistribution {
    double t = 0.0;
    Eigen::VectorXd probs;
    /// probs / max(probs); the hottest node gets exactly 1.
    Eigen::VectorXd normed;
};

/// Throws DomainError on non-finite heat. The bias b cancels in Z and does
/// not enter the computation.
HeatDistribution heat_distribution(const HeatState& state, const BoltzmannConfig& cfg);

/// keep[i] ~ Bernoulli(dist.normed[i]), drawn in node order.
std::vector<bool> draw_keep_mask(const HeatDistribution& dist, StreamRng& rng);

/// DropNode: removes every node whose draw is 0 together with its edges.
/// Survivors are re-packed to 0-based ids in source order.
Graph drop_node(const Graph& g, const HeatDistribution& dist, StreamRng& rng);

struct EpisodeOptions {
    HeatSelector method = HeatSelector::Exact;
    AutoThresholds thresholds{};
    /// Draw G^{t_k} from G^{t_{k-1}} with step t_k - t_{k-1} instead of
    /// independently from the source graph.
    bool cumulative = false;
    /// Position of the graph in its dataset; keys the RNG sub-streams.
    std::uint64_t graph_index = 0;
};

/// Sequence of augmented snapshots of one source graph.
struct TemporalEpisode {
    Graph source;
    std::vector<double> times;
    std::vector<Graph> snapshots;
    /// kept_masks[k][v]: source node v survives in snapshots[k].
    std::vector<std::vector<bool>> kept_masks;
    std::uint64_t seed = 0;
    std::uint64_t graph_index = 0;

    std::size_t length() const noexcept { return snapshots.size(); }

    friend bool operator==(const TemporalEpisode&, const TemporalEpisode&) = default;
};

/// `times` must be strictly ascending with times[0] == 0 (ConfigError
/// otherwise); u0 must be positive. Snapshot k uses the RNG stream
/// (seed, graph_index, k), so results are reproducible and independent
/// of generation order.
TemporalEpisode generate_episode(const Graph& g, const std::vector<double>& times,
                                 const BoltzmannConfig& cfg, double u0, std::uint64_t seed,
                                 const EpisodeOptions& options = {});

/// Time grid {0, dt, 2 dt, ..., T}; the last point is the largest k*dt <= T
/// (with 1e-9 relative slack).
std::vector<double> time_grid(double length, double interval);

/// One JSON object per line: index, time, seed, graph, kept (source ids),
/// edges (source id pairs).
void write_episode_jsonl(std::ostream& out, const TemporalEpisode& episode);

/// Inverse of write_episode_jsonl given the source graph. Throws FormatError
/// when a record is malformed or not a subgraph of `source`.
TemporalEpisode read_episode_jsonl(std::istream& in, const Graph& source);

} // namespace evk
