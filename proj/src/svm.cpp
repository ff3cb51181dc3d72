#include "evokernel/svm.hpp"
#include "evokernel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace evk {

namespace {

constexpr double kTau = 1e-12;

class SmoSolver {
public:
    SmoSolver(const Eigen::MatrixXd& k, std::span<const int> y, double c)
        : k_(k), y_(y.begin(), y.end()), c_(c), n_(y.size()), alpha_(n_, 0.0),
          grad_(n_, -1.0) {}

    BinarySvm solve(const SvmOptions& options) {
        BinarySvm out;
        std::size_t iter = 0;
        double violation = 0.0;
        bool converged = false;
        while (iter < options.max_iterations) {
            std::size_t i = 0;
            std::size_t j = 0;
            violation = select_working_set(i, j);
            if (violation < options.tolerance || j == npos) {
                converged = true;
                break;
            }
            update(i, j);
            ++iter;
        }
        if (!converged) {
            std::size_t i = 0;
            std::size_t j = 0;
            violation = select_working_set(i, j);
            converged = violation < options.tolerance;
        }
        out.alpha = alpha_;
        out.targets = y_;
        out.bias = -rho();
        out.iterations = iter;
        out.converged = converged;
        out.max_violation = std::max(violation, 0.0);
        for (std::size_t t = 0; t < n_; ++t) {
            if (alpha_[t] > 0.0) {
                out.support.push_back(t);
            }
        }
        return out;
    }

private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    double q(std::size_t a, std::size_t b) const {
        return static_cast<double>(y_[a] * y_[b]) * k_(static_cast<Eigen::Index>(a),
                                                       static_cast<Eigen::Index>(b));
    }

    bool in_up(std::size_t t) const {
        return (y_[t] > 0 && alpha_[t] < c_) || (y_[t] < 0 && alpha_[t] > 0.0);
    }
    bool in_low(std::size_t t) const {
        return (y_[t] > 0 && alpha_[t] > 0.0) || (y_[t] < 0 && alpha_[t] < c_);
    }

    // Returns m(alpha) - M(alpha); picks i by maximal violation and j by
    // the largest second-order decrease of the objective.
    double select_working_set(std::size_t& out_i, std::size_t& out_j) const {
        double gmax = -std::numeric_limits<double>::infinity();
        double gmax2 = -std::numeric_limits<double>::infinity();
        std::size_t i = npos;
        for (std::size_t t = 0; t < n_; ++t) {
            if (in_up(t)) {
                const double v = -y_[t] * grad_[t];
                if (v >= gmax) {
                    gmax = v;
                    i = t;
                }
            }
        }
        std::size_t j = npos;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n_; ++t) {
            if (!in_low(t)) {
                continue;
            }
            const double v = y_[t] * grad_[t];
            gmax2 = std::max(gmax2, v);
            if (i == npos) {
                continue;
            }
            const double b = gmax + v;
            if (b > 0.0) {
                double a = q(i, i) + q(t, t) - 2.0 * y_[i] * y_[t] * q(i, t);
                if (a <= 0.0) {
                    a = kTau;
                }
                const double gain = -(b * b) / a;
                if (gain <= best) {
                    best = gain;
                    j = t;
                }
            }
        }
        out_i = i;
        out_j = j;
        return gmax + gmax2;
    }

    void update(std::size_t i, std::size_t j) {
        const double old_i = alpha_[i];
        const double old_j = alpha_[j];
        const double qii = q(i, i);
        const double qjj = q(j, j);
        const double qij = q(i, j);
        if (y_[i] != y_[j]) {
            double quad = qii + qjj + 2.0 * qij;
            if (quad <= 0.0) {
                quad = kTau;
            }
            const double step = (-grad_[i] - grad_[j]) / quad;
            const double diff = alpha_[i] - alpha_[j];
            alpha_[i] += step;
            alpha_[j] += step;
            if (diff > 0.0) {
                if (alpha_[j] < 0.0) {
                    alpha_[j] = 0.0;
                    alpha_[i] = diff;
                }
            } else if (alpha_[i] < 0.0) {
                alpha_[i] = 0.0;
                alpha_[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha_[i] > c_) {
                    alpha_[i] = c_;
                    alpha_[j] = c_ - diff;
                }
            } else if (alpha_[j] > c_) {
                alpha_[j] = c_;
                alpha_[i] = c_ + diff;
            }
        } else {
            double quad = qii + qjj - 2.0 * qij;
            if (quad <= 0.0) {
                quad = kTau;
            }
            const double step = (grad_[i] - grad_[j]) / quad;
            const double sum = alpha_[i] + alpha_[j];
            alpha_[i] -= step;
            alpha_[j] += step;
            if (sum > c_) {
                if (alpha_[i] > c_) {
                    alpha_[i] = c_;
                    alpha_[j] = sum - c_;
                }
            } else if (alpha_[j] < 0.0) {
                alpha_[j] = 0.0;
                alpha_[i] = sum;
            }
            if (sum > c_) {
                if (alpha_[j] > c_) {
                    alpha_[j] = c_;
                    alpha_[i] = sum - c_;
                }
            } else if (alpha_[i] < 0.0) {
                alpha_[i] = 0.0;
                alpha_[j] = sum;
            }
        }
        const double di = alpha_[i] - old_i;
        const double dj = alpha_[j] - old_j;
        for (std::size_t t = 0; t < n_; ++t) {
            grad_[t] += q(t, i) * di + q(t, j) * dj;
        }
    }

    double rho() const {
        double ub = std::numeric_limits<double>::infinity();
        double lb = -std::numeric_limits<double>::infinity();
        double sum_free = 0.0;
        std::size_t free = 0;
        for (std::size_t t = 0; t < n_; ++t) {
            const double yg = y_[t] * grad_[t];
            const bool at_upper = alpha_[t] >= c_;
            const bool at_lower = alpha_[t] <= 0.0;
            if (at_upper) {
                if (y_[t] < 0) {
                    ub = std::min(ub, yg);
                } else {
                    lb = std::max(lb, yg);
                }
            } else if (at_lower) {
                if (y_[t] > 0) {
                    ub = std::min(ub, yg);
                } else {
                    lb = std::max(lb, yg);
                }
            } else {
                ++free;
                sum_free += yg;
            }
        }
        if (free > 0) {
            return sum_free / static_cast<double>(free);
        }
        return 0.5 * (ub + lb);
    }

    const Eigen::MatrixXd& k_;
    std::vector<int> y_;
    double c_;
    std::size_t n_;
    std::vector<double> alpha_;
    std::vector<double> grad_;
};

} // namespace

double BinarySvm::decision(std::span<const double> k_row) const {
    if (k_row.size() != alpha.size()) {
        throw ContractError("kernel row has " + std::to_string(k_row.size()) +
                            " entries, model has " + std::to_string(alpha.size()) +
                            " training points");
    }
    double f = 0.0;
    for (std::size_t s : support) {
        f += alpha[s] * targets[s] * k_row[s];
    }
    return f + bias;
}

BinarySvm train_binary_svm(const Eigen::MatrixXd& k, std::span<const int> targets, double c,
                           const SvmOptions& options) {
    if (!(c > 0.0)) {
        throw ConfigError("SVM regularization C must be positive");
    }
    if (k.rows() != k.cols() || static_cast<std::size_t>(k.rows()) != targets.size()) {
        throw ContractError("kernel block does not match the number of targets");
    }
    for (int y : targets) {
        if (y != 1 && y != -1) {
            throw TrainingError("binary SVM targets must be +1 or -1");
        }
    }
    SmoSolver solver(k, targets, c);
    return solver.solve(options);
}

SvmModel svm_train(const Eigen::MatrixXd& k, std::span<const int> labels,
                   std::span<const std::size_t> train_idx, double c, const SvmOptions& options) {
    if (!(c > 0.0)) {
        throw ConfigError("SVM regularization C must be positive");
    }
    if (train_idx.empty()) {
        throw ConfigError("SVM training set is empty");
    }
    if (k.rows() != k.cols() || static_cast<std::size_t>(k.rows()) != labels.size()) {
        throw ContractError("kernel matrix does not match the label vector");
    }
    SvmModel model;
    model.c = c;
    model.train_idx.assign(train_idx.begin(), train_idx.end());
    for (std::size_t idx : train_idx) {
        if (idx >= labels.size()) {
            throw ContractError("training index " + std::to_string(idx) + " out of range");
        }
        model.classes.push_back(labels[idx]);
    }
    std::sort(model.classes.begin(), model.classes.end());
    model.classes.erase(std::unique(model.classes.begin(), model.classes.end()),
                        model.classes.end());
    if (model.classes.size() < 2) {
        throw TrainingError("training set contains a single class");
    }

    const auto m = static_cast<Eigen::Index>(train_idx.size());
    Eigen::MatrixXd block(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            block(a, b) = k(static_cast<Eigen::Index>(train_idx[static_cast<std::size_t>(a)]),
                            static_cast<Eigen::Index>(train_idx[static_cast<std::size_t>(b)]));
        }
    }
    std::vector<int> targets(train_idx.size());
    for (int cls : model.classes) {
        for (std::size_t a = 0; a < train_idx.size(); ++a) {
            targets[a] = labels[train_idx[a]] == cls ? 1 : -1;
        }
        model.machines.push_back(train_binary_svm(block, targets, c, options));
    }
    return model;
}

std::vector<double> decision_values(const SvmModel& model, std::span<const double> k_row) {
    std::vector<double> values;
    values.reserve(model.machines.size());
    for (const auto& machine : model.machines) {
        values.push_back(machine.decision(k_row));
    }
    return values;
}

int svm_predict(const SvmModel& model, std::span<const double> k_row) {
    const auto values = decision_values(model, k_row);
    std::size_t best = 0;
    for (std::size_t m = 1; m < values.size(); ++m) {
        if (values[m] > values[best]) {
            best = m;
        }
    }
    return model.classes[best];
}

} // namespace evk
