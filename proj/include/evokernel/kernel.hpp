#pragma once

#include "evokernel/gdtw.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evk {

/// Symmetric pairwise GDTW distances with a zero diagonal.
struct DistanceMatrix {
    Eigen::MatrixXd d;
    std::size_t size() const noexcept { return static_cast<std::size_t>(d.rows()); }
};

/// Call counters for the expensive stages, readable by tests and reports.
struct StageCounters {
    std::atomic<std::uint64_t> distance_matrix_builds{0};
    std::atomic<std::uint64_t> gdtw_pairs{0};
    std::atomic<std::uint64_t> kernel_builds{0};
};

StageCounters& stage_counters();

/// Each unordered pair is evaluated once (i < j) and mirrored.
/// Throws ContractError if the episodes are not on one grid.
DistanceMatrix distance_matrix(const std::vector<EmbeddedEpisode>& episodes);
DistanceMatrix distance_matrix(const std::vector<TemporalEpisode>& episodes,
                               const MetricConfig& cfg);

enum class PsdRepair { None, Clip };

std::string_view to_string(PsdRepair r);
PsdRepair parse_psd_repair(std::string_view name);

struct EvolutionKernelMatrix {
    Eigen::MatrixXd k;
    double sigma = 1.0;
    PsdRepair repair = PsdRepair::None;
};

/// Median of the strictly-upper-triangle entries; nullopt when there are none.
std::optional<double> median_offdiagonal(const DistanceMatrix& d);

/// K = exp(-d / sigma) with sigma = gamma_scale * median off-diagonal
/// distance. An empty or zero median is replaced by 1. `sigma_override`
/// bypasses the median heuristic. Throws ConfigError unless gamma_scale > 0.
EvolutionKernelMatrix evolution_kernel(const DistanceMatrix& d, double gamma_scale,
                                       PsdRepair repair,
                                       std::optional<double> sigma_override = std::nullopt);

/// Zeroes the negative eigenvalues of a symmetric matrix, reconstructs and
/// re-symmetrizes.
Eigen::MatrixXd clip_psd(const Eigen::MatrixXd& k);

/// Row-major CSV with a header row of ids and the id as first column.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& ids);

} // namespace evk
