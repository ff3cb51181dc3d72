#include "evokernel/spectral_heat.hpp"
#include "evokernel/errors.hpp"

#include <cmath>
#include <string>

namespace evk {

namespace {

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("heat kernel time must be finite and >= 0, got " + std::to_string(t));
    }
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

Eigen::MatrixXd exp_spectrum(const SpectralDecomposition& spec, double t) {
    const Eigen::VectorXd weights = (-t * spec.eigenvalues.array()).exp().matrix();
    return symmetrized(spec.eigenvectors * weights.asDiagonal() * spec.eigenvectors.transpose());
}

} // namespace

SpectralDecomposition spectral_decompose(const Eigen::MatrixXd& symmetric) {
    if (symmetric.rows() != symmetric.cols()) {
        throw DomainError("spectral_decompose needs a square matrix");
    }
    SpectralDecomposition spec;
    if (symmetric.rows() == 0) {
        spec.eigenvalues.resize(0);
        spec.eigenvectors.resize(0, 0);
        return spec;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
    const auto reconstruct = [&] {
        return (solver.eigenvectors() * solver.eigenvalues().asDiagonal() *
                solver.eigenvectors().transpose() -
                symmetric)
            .norm();
    };
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigensolver did not converge", reconstruct());
    }
    const double residual = reconstruct();
    if (residual > 1e-8 * std::max(1.0, symmetric.norm())) {
        throw NumericalError("eigendecomposition does not reconstruct its input", residual);
    }
    spec.eigenvalues = solver.eigenvalues();
    spec.eigenvectors = solver.eigenvectors();
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        double& lambda = spec.eigenvalues(i);
        if (lambda < 0.0 && lambda >= -kEigenClampTolerance) {
            lambda = 0.0;
        }
    }
    return spec;
}

SpectralDecomposition spectral_decompose(const NormalizedLaplacian& lap) {
    return spectral_decompose(lap.matrix);
}

std::string_view to_string(HeatMethod m) {
    switch (m) {
    case HeatMethod::Exact: return "exact";
    case HeatMethod::Taylor2: return "taylor";
    case HeatMethod::Fiedler: return "fiedler";
    }
    return "?";
}

std::string_view to_string(HeatSelector s) {
    switch (s) {
    case HeatSelector::Exact: return "exact";
    case HeatSelector::Taylor2: return "taylor";
    case HeatSelector::Fiedler: return "fiedler";
    case HeatSelector::Auto: return "auto";
    }
    return "?";
}

HeatSelector parse_heat_selector(std::string_view name) {
    if (name == "exact") return HeatSelector::Exact;
    if (name == "taylor") return HeatSelector::Taylor2;
    if (name == "fiedler") return HeatSelector::Fiedler;
    if (name == "auto") return HeatSelector::Auto;
    throw ConfigError("unknown heat-kernel method '" + std::string(name) +
                      "' (expected exact, taylor, fiedler or auto)");
}

HeatKernel heat_kernel_exact(const SpectralDecomposition& spec, double t) {
    require_time(t);
    if (t == 0.0) {
        const auto n = static_cast<Eigen::Index>(spec.size());
        return {t, Eigen::MatrixXd::Identity(n, n), HeatMethod::Exact};
    }
    return {t, exp_spectrum(spec, t), HeatMethod::Exact};
}

HeatKernel heat_kernel_taylor2(const NormalizedLaplacian& lap, double t) {
    require_time(t);
    const auto n = lap.matrix.rows();
    const Eigen::MatrixXd tl = t * lap.matrix;
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - tl + 0.5 * (tl * tl);
    return {t, std::move(h), HeatMethod::Taylor2};
}

HeatKernel heat_kernel_fiedler(const SpectralDecomposition& spec, double t) {
    require_time(t);
    const auto n = static_cast<Eigen::Index>(spec.size());
    if (n < 2) {
        throw DomainError("Fiedler approximation needs at least 2 nodes");
    }
    const Eigen::VectorXd phi1 = spec.eigenvectors.col(1);
    const double decay = std::exp(-spec.fiedler_value() * t);
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - decay * (phi1 * phi1.transpose());
    return {t, std::move(h), HeatMethod::Fiedler};
}

HeatMethod select_heat_method(const SpectralDecomposition& spec, double t,
                              const AutoThresholds& thresholds) {
    if (t < thresholds.taylor_below) {
        return HeatMethod::Taylor2;
    }
    if (spec.size() >= 2 && spec.fiedler_value() > 0.0 &&
        t > thresholds.fiedler_factor / spec.fiedler_value()) {
        return HeatMethod::Fiedler;
    }
    return HeatMethod::Exact;
}

HeatKernel heat_kernel(const NormalizedLaplacian& lap, const SpectralDecomposition& spec,
                       double t, HeatSelector selector, const AutoThresholds& thresholds) {
    HeatMethod method = HeatMethod::Exact;
    switch (selector) {
    case HeatSelector::Exact: method = HeatMethod::Exact; break;
    case HeatSelector::Taylor2: method = HeatMethod::Taylor2; break;
    case HeatSelector::Fiedler: method = HeatMethod::Fiedler; break;
    case HeatSelector::Auto: method = select_heat_method(spec, t, thresholds); break;
    }
    switch (method) {
    case HeatMethod::Taylor2: return heat_kernel_taylor2(lap, t);
    case HeatMethod::Fiedler: return heat_kernel_fiedler(spec, t);
    case HeatMethod::Exact: break;
    }
    return heat_kernel_exact(spec, t);
}

HeatState propagate_heat(const HeatKernel& hk, double u0) {
    const Eigen::VectorXd initial = Eigen::VectorXd::Constant(hk.matrix.cols(), u0);
    return {hk.t, hk.matrix * initial};
}

double perturbation_gap(const NormalizedLaplacian& lap, const Eigen::MatrixXd& f, double t) {
    require_time(t);
    if (f.rows() != lap.matrix.rows() || f.cols() != lap.matrix.cols()) {
        throw DomainError("perturbation shape does not match the Laplacian");
    }
    const auto base = spectral_decompose(lap.matrix);
    const auto perturbed = spectral_decompose(symmetrized(lap.matrix + f));
    return (exp_spectrum(base, t) - exp_spectrum(perturbed, t)).norm();
}

} // namespace evk
