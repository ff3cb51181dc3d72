#include "evokernel/gdtw.hpp"
#include "evokernel/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace evk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_length(std::size_t a, std::size_t b) {
    if (a != b) {
        throw ContractError("episodes must share one time grid (lengths " + std::to_string(a) +
                            " and " + std::to_string(b) + ")");
    }
    if (a == 0) {
        throw ContractError("episodes must contain at least one snapshot");
    }
}

} // namespace

EmbeddedEpisode embed_episode(const TemporalEpisode& episode, const MetricConfig& cfg) {
    EmbeddedEpisode out;
    out.reserve(episode.length());
    for (const auto& snapshot : episode.snapshots) {
        out.push_back(wl_embed(snapshot, cfg));
    }
    return out;
}

WarpingMatrix build_warping_matrix(const EmbeddedEpisode& e1, const EmbeddedEpisode& e2) {
    require_same_length(e1.size(), e2.size());
    const auto n = static_cast<Eigen::Index>(e1.size());
    WarpingMatrix w{Eigen::MatrixXd(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            w.m(i, j) = delta(e1[static_cast<std::size_t>(i)], e2[static_cast<std::size_t>(j)]);
        }
    }
    return w;
}

WarpingMatrix build_warping_matrix(const TemporalEpisode& e1, const TemporalEpisode& e2,
                                   const MetricConfig& cfg) {
    require_same_length(e1.length(), e2.length());
    return build_warping_matrix(embed_episode(e1, cfg), embed_episode(e2, cfg));
}

WarpingResult gdtw_distance(const WarpingMatrix& w) {
    const auto n = static_cast<Eigen::Index>(w.n_steps());
    if (n == 0 || w.m.cols() != n) {
        throw ContractError("warping matrix must be square and non-empty");
    }
    if (!w.m.allFinite() || (w.m.array() < 0.0).any()) {
        throw ContractError("warping matrix entries must be finite and non-negative");
    }

    WarpingResult r;
    r.cumulative = Eigen::MatrixXd::Constant(n + 1, n + 1, kInf);
    auto& g = r.cumulative;
    g(0, 0) = 0.0;
    for (Eigen::Index i = 1; i <= n; ++i) {
        for (Eigen::Index j = 1; j <= n; ++j) {
            g(i, j) = w.m(i - 1, j - 1) + std::min({g(i, j - 1), g(i - 1, j), g(i - 1, j - 1)});
        }
    }
    r.distance = g(n, n);

    Eigen::Index i = n;
    Eigen::Index j = n;
    r.path.cells.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)});
    while (i > 1 || j > 1) {
        const double diag = g(i - 1, j - 1);
        const double up = g(i - 1, j);
        const double left = g(i, j - 1);
        if (diag <= up && diag <= left) {
            --i;
            --j;
        } else if (up <= left) {
            --i;
        } else {
            --j;
        }
        r.path.cells.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)});
    }
    std::reverse(r.path.cells.begin(), r.path.cells.end());
    if (!is_admissible_path(r.path, static_cast<std::size_t>(n))) {
        throw std::logic_error("backtracked warping path violates its constraints");
    }
    return r;
}

double gdtw(const EmbeddedEpisode& e1, const EmbeddedEpisode& e2) {
    require_same_length(e1.size(), e2.size());
    const std::size_t n = e1.size();
    // Two rows of gamma; index 0 is the infinite border column.
    std::vector<double> prev(n + 1, kInf);
    std::vector<double> curr(n + 1, kInf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        curr[0] = kInf;
        for (std::size_t j = 1; j <= n; ++j) {
            curr[j] = delta(e1[i - 1], e2[j - 1]) + std::min({curr[j - 1], prev[j], prev[j - 1]});
        }
        std::swap(prev, curr);
    }
    return prev[n];
}

double euclidean_episode_distance(const EmbeddedEpisode& e1, const EmbeddedEpisode& e2) {
    require_same_length(e1.size(), e2.size());
    double s = 0.0;
    for (std::size_t k = 0; k < e1.size(); ++k) {
        const double d = delta(e1[k], e2[k]);
        s += d * d;
    }
    return std::sqrt(s);
}

double euclidean_episode_distance(const TemporalEpisode& e1, const TemporalEpisode& e2,
                                  const MetricConfig& cfg) {
    require_same_length(e1.length(), e2.length());
    return euclidean_episode_distance(embed_episode(e1, cfg), embed_episode(e2, cfg));
}

bool is_admissible_path(const WarpingPath& path, std::size_t n) {
    if (n == 0 || path.cells.empty()) {
        return false;
    }
    if (path.cells.front() != Cell{0, 0} || path.cells.back() != Cell{n - 1, n - 1}) {
        return false;
    }
    for (std::size_t l = 1; l < path.cells.size(); ++l) {
        const auto& a = path.cells[l - 1];
        const auto& b = path.cells[l];
        if (b.i < a.i || b.j < a.j) {
            return false;
        }
        if (b.i > a.i + 1 || b.j > a.j + 1) {
            return false;
        }
        if (a == b) {
            return false;
        }
    }
    return path.cells.size() >= n && path.cells.size() <= 2 * n - 1;
}

nlohmann::json warping_to_json(const WarpingMatrix& w, const WarpingResult& r) {
    nlohmann::json matrix = nlohmann::json::array();
    for (Eigen::Index i = 0; i < w.m.rows(); ++i) {
        std::vector<double> row(w.m.cols());
        for (Eigen::Index j = 0; j < w.m.cols(); ++j) {
            row[static_cast<std::size_t>(j)] = w.m(i, j);
        }
        matrix.push_back(row);
    }
    nlohmann::json path = nlohmann::json::array();
    for (const auto& c : r.path.cells) {
        path.push_back({c.i, c.j});
    }
    return {{"n", w.n_steps()}, {"matrix", matrix}, {"path", path}, {"distance", r.distance}};
}

} // namespace evk
