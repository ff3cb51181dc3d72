#include "evokernel/kernel.hpp"
#include "evokernel/errors.hpp"
#include "evokernel/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace evk {

StageCounters& stage_counters() {
    static StageCounters counters;
    return counters;
}

DistanceMatrix distance_matrix(const std::vector<EmbeddedEpisode>& episodes) {
    const std::size_t n = episodes.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (episodes[i].size() != episodes[0].size()) {
            throw ContractError("episode " + std::to_string(i) + " has " +
                                std::to_string(episodes[i].size()) + " snapshots, episode 0 has " +
                                std::to_string(episodes[0].size()));
        }
    }
    auto& counters = stage_counters();
    ++counters.distance_matrix_builds;
    DistanceMatrix out{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                             static_cast<Eigen::Index>(n))};
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                gdtw(episodes[i], episodes[j]);
        }
        counters.gdtw_pairs += n - i - 1;
    });
    for (Eigen::Index i = 0; i < out.d.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < out.d.cols(); ++j) {
            out.d(j, i) = out.d(i, j);
        }
    }
    return out;
}

DistanceMatrix distance_matrix(const std::vector<TemporalEpisode>& episodes,
                               const MetricConfig& cfg) {
    std::vector<EmbeddedEpisode> embedded(episodes.size());
    parallel_for(episodes.size(),
                 [&](std::size_t i) { embedded[i] = embed_episode(episodes[i], cfg); });
    return distance_matrix(embedded);
}

std::string_view to_string(PsdRepair r) {
    return r == PsdRepair::Clip ? "clip" : "none";
}

PsdRepair parse_psd_repair(std::string_view name) {
    if (name == "clip") return PsdRepair::Clip;
    if (name == "none") return PsdRepair::None;
    throw ConfigError("unknown PSD repair mode '" + std::string(name) + "' (expected none or clip)");
}

std::optional<double> median_offdiagonal(const DistanceMatrix& d) {
    std::vector<double> values;
    const auto n = d.d.rows();
    values.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            values.push_back(d.d(i, j));
        }
    }
    if (values.empty()) {
        return std::nullopt;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

Eigen::MatrixXd clip_psd(const Eigen::MatrixXd& k) {
    if (k.rows() == 0) {
        return k;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("kernel eigendecomposition failed", 0.0);
    }
    const Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXd r =
        solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().transpose();
    return 0.5 * (r + r.transpose());
}

EvolutionKernelMatrix evolution_kernel(const DistanceMatrix& d, double gamma_scale,
                                       PsdRepair repair, std::optional<double> sigma_override) {
    if (!(gamma_scale > 0.0) || !std::isfinite(gamma_scale)) {
        throw ConfigError("gamma scale must be positive");
    }
    ++stage_counters().kernel_builds;
    EvolutionKernelMatrix out;
    out.repair = repair;
    if (sigma_override) {
        if (!(*sigma_override > 0.0)) {
            throw ConfigError("kernel bandwidth must be positive");
        }
        out.sigma = *sigma_override;
    } else {
        double median = median_offdiagonal(d).value_or(1.0);
        if (!(median > 0.0)) {
            median = 1.0;
        }
        out.sigma = gamma_scale * median;
    }
    out.k = (-d.d.array() / out.sigma).exp().matrix();
    if (repair == PsdRepair::Clip) {
        out.k = clip_psd(out.k);
    }
    return out;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& ids) {
    if (ids.size() != static_cast<std::size_t>(m.rows()) || m.rows() != m.cols()) {
        throw ContractError("CSV export needs a square matrix with one id per row");
    }
    std::ostringstream buf;
    buf << std::setprecision(17);
    buf << "id";
    for (const auto& id : ids) {
        buf << ',' << id;
    }
    buf << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        buf << ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            buf << ',' << m(i, j);
        }
        buf << '\n';
    }
    out << buf.str();
}

} // namespace evk
