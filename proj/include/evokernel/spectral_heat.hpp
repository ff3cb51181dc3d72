#pragma once

#include "evokernel/graph.hpp"

#include <Eigen/Dense>

#include <string_view>

namespace evk {

/// Eigenpairs of a symmetric matrix, eigenvalues ascending, eigenvectors
/// orthonormal columns. Eigenvalues in [-1e-9, 0) are clamped to 0.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
    /// Second-smallest eigenvalue; requires size() >= 2.
    double fiedler_value() const { return eigenvalues(1); }
};

inline constexpr double kEigenClampTolerance = 1e-9;

/// Throws NumericalError if the solver fails or the reconstruction residual
/// exceeds 1e-8 (relative to max(1, ||m||_F)).
SpectralDecomposition spectral_decompose(const Eigen::MatrixXd& symmetric);
SpectralDecomposition spectral_decompose(const NormalizedLaplacian& lap);

enum class HeatMethod { Exact, Taylor2, Fiedler };

/// Method requested by configuration; Auto resolves per time point.
enum class HeatSelector { Exact, Taylor2, Fiedler, Auto };

std::string_view to_string(HeatMethod m);
std::string_view to_string(HeatSelector s);
HeatSelector parse_heat_selector(std::string_view name);

struct HeatKernel {
    double t = 0.0;
    Eigen::MatrixXd matrix;
    HeatMethod method = HeatMethod::Exact;
};

/// Phi e^{-t Lambda} Phi^T. Throws DomainError for t < 0.
HeatKernel heat_kernel_exact(const SpectralDecomposition& spec, double t);

/// I - t L + (t L)^2 / 2. Accurate only for small t; no regime check.
HeatKernel heat_kernel_taylor2(const NormalizedLaplacian& lap, double t);

/// I - e^{-lambda_1 t} phi_1 phi_1^T. Throws DomainError when n < 2 or t < 0.
HeatKernel heat_kernel_fiedler(const SpectralDecomposition& spec, double t);

/// Regime boundaries used by HeatSelector::Auto.
struct AutoThresholds {
    double taylor_below = 0.1;
    /// Fiedler is used for t > fiedler_factor / lambda_1.
    double fiedler_factor = 10.0;
};

/// Taylor2 for t < taylor_below, Fiedler for t > fiedler_factor / lambda_1
/// (only when lambda_1 > 0), Exact otherwise.
HeatMethod select_heat_method(const SpectralDecomposition& spec, double t,
                              const AutoThresholds& thresholds = {});

HeatKernel heat_kernel(const NormalizedLaplacian& lap, const SpectralDecomposition& spec,
                       double t, HeatSelector selector, const AutoThresholds& thresholds = {});

/// Heat vector u_t = H_t (u0 * 1).
struct HeatState {
    double t = 0.0;
    Eigen::VectorXd heat;
};

HeatState propagate_heat(const HeatKernel& hk, double u0);

/// ||e^{-t L} - e^{-t (L + F)}||_F for a symmetric perturbation F.
double perturbation_gap(const NormalizedLaplacian& lap, const Eigen::MatrixXd& f, double t);

} // namespace evk
