#pragma once

#include "evokernel/augmentation.hpp"
#include "evokernel/embedding.hpp"

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <vector>

namespace evk {

/// M(i, j) = delta(snapshot i of the first episode, snapshot j of the second).
struct WarpingMatrix {
    Eigen::MatrixXd m;
    std::size_t n_steps() const noexcept { return static_cast<std::size_t>(m.rows()); }
};

/// 0-based cell of the warping matrix.
struct Cell {
    std::size_t i = 0;
    std::size_t j = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

struct WarpingPath {
    std::vector<Cell> cells;
    std::size_t length() const noexcept { return cells.size(); }
};

struct WarpingResult {
    double distance = 0.0;
    WarpingPath path;
    /// (N+1) x (N+1) cumulative costs gamma with gamma(0,0) = 0 and an
    /// infinite first row and column.
    Eigen::MatrixXd cumulative;
};

using EmbeddedEpisode = std::vector<WlEmbedding>;

EmbeddedEpisode embed_episode(const TemporalEpisode& episode, const MetricConfig& cfg);

/// Throws ContractError when the episodes differ in length or are empty.
WarpingMatrix build_warping_matrix(const EmbeddedEpisode& e1, const EmbeddedEpisode& e2);
WarpingMatrix build_warping_matrix(const TemporalEpisode& e1, const TemporalEpisode& e2,
                                   const MetricConfig& cfg);

/// gamma(i,j) = M(i,j) + min{gamma(i,j-1), gamma(i-1,j), gamma(i-1,j-1)}.
/// The path is backtracked from (N-1, N-1) preferring diagonal, then up
/// (i-1, j), then left (i, j-1) among equal predecessors.
WarpingResult gdtw_distance(const WarpingMatrix& m);

/// Distance only, without materializing M or the path; bit-identical to
/// gdtw_distance(build_warping_matrix(e1, e2)).distance.
double gdtw(const EmbeddedEpisode& e1, const EmbeddedEpisode& e2);

/// sqrt(sum_k delta(e1[k], e2[k])^2).
double euclidean_episode_distance(const EmbeddedEpisode& e1, const EmbeddedEpisode& e2);
double euclidean_episode_distance(const TemporalEpisode& e1, const TemporalEpisode& e2,
                                  const MetricConfig& cfg);

/// Boundary, monotonicity and continuity on an n x n grid.
bool is_admissible_path(const WarpingPath& path, std::size_t n);

/// {"n": N, "matrix": [[...]], "path": [[i, j], ...], "distance": d}
nlohmann::json warping_to_json(const WarpingMatrix& m, const WarpingResult& r);

} // namespace evk
