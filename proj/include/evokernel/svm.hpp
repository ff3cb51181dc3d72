#pragma once

#include "evokernel/kernel.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace evk {

struct SvmOptions {
    /// Stop when the maximal KKT violation m(alpha) - M(alpha) drops below this.
    double tolerance = 1e-3;
    std::size_t max_iterations = 100000;
};

/// Binary C-SVC solved by SMO with second-order working-set selection.
struct BinarySvm {
    /// Dual variables, one per training point, in [0, C].
    std::vector<double> alpha;
    /// +1 / -1 targets aligned with alpha.
    std::vector<int> targets;
    double bias = 0.0;
    std::vector<std::size_t> support;
    std::size_t iterations = 0;
    bool converged = false;
    double max_violation = 0.0;

    /// sum_i alpha_i y_i k_row[i] + bias.
    double decision(std::span<const double> k_row) const;
};

/// Solves min 1/2 a^T Q a - 1^T a, Q_ij = y_i y_j K_ij, 0 <= a <= C, y^T a = 0.
/// `k` is the kernel restricted to the training points.
BinarySvm train_binary_svm(const Eigen::MatrixXd& k, std::span<const int> targets, double c,
                           const SvmOptions& options = {});

/// One-vs-rest ensemble over the classes present in the training labels.
struct SvmModel {
    double c = 1.0;
    std::vector<std::size_t> train_idx;
    /// classes[m] is the positive class of machines[m]; ascending.
    std::vector<int> classes;
    std::vector<BinarySvm> machines;
};

/// `k` is the full dataset kernel; `labels` covers the whole dataset.
/// Throws TrainingError when fewer than two classes are present; ConfigError
/// when c <= 0 or train_idx is empty.
SvmModel svm_train(const Eigen::MatrixXd& k, std::span<const int> labels,
                   std::span<const std::size_t> train_idx, double c,
                   const SvmOptions& options = {});

/// One decision value per class in model.classes.
std::vector<double> decision_values(const SvmModel& model, std::span<const double> k_row);

/// Class of the largest decision value; ties go to the lowest class id.
/// `k_row` holds kernel values against model.train_idx, in that order.
int svm_predict(const SvmModel& model, std::span<const double> k_row);

} // namespace evk
