#include "evokernel/experiment.hpp"
#include "evokernel/errors.hpp"
#include "evokernel/parallel.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace evk {

namespace {

template <typename Fn>
auto run_stage(const char* name, std::vector<StageTiming>& timings, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    const auto record = [&] {
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        timings.push_back({name, took.count()});
    };
    try {
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            record();
        } else {
            auto result = fn();
            record();
            return result;
        }
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

} // namespace

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.time_interval > 0.0)) {
        throw ConfigError("time interval must be > 0");
    }
    // T = 0 is the static special case: the grid is {0}.
    if (!(cfg.time_length == 0.0 || cfg.time_length >= cfg.time_interval)) {
        throw ConfigError("time length must be 0 or >= the time interval");
    }
    if (!(cfg.u0 > 0.0)) {
        throw ConfigError("u0 must be > 0");
    }
    if (!(cfg.gamma_scale > 0.0)) {
        throw ConfigError("gamma scale must be > 0");
    }
    if (!(cfg.c > 0.0)) {
        throw ConfigError("C must be > 0");
    }
    if (cfg.folds < 2) {
        throw ConfigError("at least 2 folds are required");
    }
    validate(cfg.metric);
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
    return {
        {"dataset_dir", cfg.dataset_dir.string()},
        {"dataset_name", cfg.dataset_name},
        {"time_length", cfg.time_length},
        {"time_interval", cfg.time_interval},
        {"a", cfg.boltzmann.a},
        {"b", cfg.boltzmann.b},
        {"u0", cfg.u0},
        {"metric", to_string(cfg.metric.kind)},
        {"wl_iterations", cfg.metric.wl_iterations},
        {"emb_dim", cfg.metric.dim},
        {"gamma_scale", cfg.gamma_scale},
        {"psd", to_string(cfg.psd)},
        {"c", cfg.c},
        {"folds", cfg.folds},
        {"seed", cfg.seed},
        {"cumulative", cfg.cumulative},
        {"heat_kernel", to_string(cfg.heat_method)},
        {"svm_tolerance", cfg.svm.tolerance},
        {"svm_max_iterations", cfg.svm.max_iterations},
    };
}

std::vector<Fold> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed) {
    if (folds < 2) {
        throw ConfigError("at least 2 folds are required");
    }
    if (labels.empty()) {
        throw ConfigError("cannot split an empty dataset into folds");
    }
    int max_label = 0;
    for (int y : labels) {
        if (y < 0) {
            throw ConfigError("class ids must be non-negative");
        }
        max_label = std::max(max_label, y);
    }
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(max_label) + 1);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        members[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    const auto k = static_cast<std::size_t>(folds);
    for (std::size_t cls = 0; cls < members.size(); ++cls) {
        if (!members[cls].empty() && members[cls].size() < k) {
            throw ConfigError("class " + std::to_string(cls) + " has only " +
                              std::to_string(members[cls].size()) + " members for " +
                              std::to_string(folds) + " folds; reduce --folds");
        }
    }

    auto rng = StreamRng::derive(seed, StreamPurpose::Folds);
    std::vector<std::size_t> assignment(labels.size());
    std::size_t slot = 0;
    for (auto& cls : members) {
        shuffle(std::span<std::size_t>(cls), rng);
        for (std::size_t idx : cls) {
            assignment[idx] = slot++ % k;
        }
    }
    std::vector<Fold> out(k);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t f = 0; f < k; ++f) {
            (assignment[i] == f ? out[f].test : out[f].train).push_back(i);
        }
    }
    return out;
}

CvReport run_experiment(const ExperimentConfig& cfg, ExperimentArtifacts* artifacts) {
    std::vector<StageTiming> timings;
    const auto ds = run_stage("load", timings, [&] {
        validate(cfg);
        return load_tu_dataset(cfg.dataset_dir, cfg.dataset_name);
    });
    auto report = run_experiment(cfg, ds, artifacts);
    report.timings.insert(report.timings.begin(), timings.begin(), timings.end());
    return report;
}

CvReport run_experiment(const ExperimentConfig& cfg, const GraphDataset& ds,
                        ExperimentArtifacts* artifacts) {
    CvReport report;
    auto& timings = report.timings;
    report.times = run_stage("config", timings, [&] {
        validate(cfg);
        return time_grid(cfg.time_length, cfg.time_interval);
    });

    report.dataset = ds.name;
    report.graph_count = ds.size();
    report.class_count = ds.class_count();
    report.config = to_json(cfg);

    const auto folds =
        run_stage("folds", timings, [&] { return stratified_folds(ds.labels, cfg.folds, cfg.seed); });

    auto& counters = stage_counters();
    const std::uint64_t builds0 = counters.distance_matrix_builds;
    const std::uint64_t pairs0 = counters.gdtw_pairs;
    const std::uint64_t kernels0 = counters.kernel_builds;

    const auto embedded = run_stage("augment", timings, [&] {
        std::vector<EmbeddedEpisode> out(ds.size());
        parallel_for(ds.size(), [&](std::size_t i) {
            EpisodeOptions options;
            options.method = cfg.heat_method;
            options.cumulative = cfg.cumulative;
            options.graph_index = i;
            const auto episode =
                generate_episode(ds.graphs[i], report.times, cfg.boltzmann, cfg.u0, cfg.seed, options);
            out[i] = embed_episode(episode, cfg.metric);
        });
        return out;
    });

    const auto distances = run_stage("distance", timings, [&] { return distance_matrix(embedded); });
    const auto kernel = run_stage("kernel", timings,
                                  [&] { return evolution_kernel(distances, cfg.gamma_scale, cfg.psd); });
    report.sigma = kernel.sigma;

    const std::size_t classes = ds.class_count();
    report.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
    run_stage("evaluate", timings, [&] {
        for (const auto& fold : folds) {
            const auto model = svm_train(kernel.k, ds.labels, fold.train, cfg.c, cfg.svm);
            FoldSolverInfo info;
            for (const auto& m : model.machines) {
                info.max_iterations = std::max(info.max_iterations, m.iterations);
                info.converged = info.converged && m.converged;
            }
            report.solver.push_back(info);
            std::size_t correct = 0;
            std::vector<double> row(fold.train.size());
            for (std::size_t idx : fold.test) {
                for (std::size_t a = 0; a < fold.train.size(); ++a) {
                    row[a] = kernel.k(static_cast<Eigen::Index>(idx),
                                      static_cast<Eigen::Index>(fold.train[a]));
                }
                const int predicted = svm_predict(model, row);
                const int truth = ds.labels[idx];
                correct += predicted == truth ? 1 : 0;
                ++report.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(predicted)];
            }
            report.fold_accuracies.push_back(static_cast<double>(correct) /
                                             static_cast<double>(fold.test.size()));
        }
    });

    double sum = 0.0;
    for (double a : report.fold_accuracies) {
        sum += a;
    }
    report.mean_accuracy = sum / static_cast<double>(report.fold_accuracies.size());
    double sq = 0.0;
    for (double a : report.fold_accuracies) {
        sq += (a - report.mean_accuracy) * (a - report.mean_accuracy);
    }
    report.std_accuracy = std::sqrt(sq / static_cast<double>(report.fold_accuracies.size()));

    if (artifacts != nullptr) {
        artifacts->distances = distances;
        artifacts->kernel = kernel;
    }
    report.distance_matrix_builds = counters.distance_matrix_builds - builds0;
    report.gdtw_pairs = counters.gdtw_pairs - pairs0;
    report.kernel_builds = counters.kernel_builds - kernels0;
    return report;
}

std::vector<CvReport> sweep_time_length(const ExperimentConfig& cfg,
                                        const std::vector<double>& lengths) {
    std::vector<StageTiming> timings;
    const auto ds = run_stage("load", timings, [&] {
        validate(cfg);
        return load_tu_dataset(cfg.dataset_dir, cfg.dataset_name);
    });
    return sweep_time_length(cfg, ds, lengths);
}

std::vector<CvReport> sweep_time_length(const ExperimentConfig& cfg, const GraphDataset& ds,
                                        const std::vector<double>& lengths) {
    if (lengths.empty()) {
        throw StageError("config", "sweep needs at least one time length");
    }
    for (std::size_t i = 1; i < lengths.size(); ++i) {
        if (!(lengths[i] > lengths[i - 1])) {
            throw StageError("config", "sweep lengths must be strictly ascending");
        }
    }
    std::vector<CvReport> reports;
    reports.reserve(lengths.size());
    for (double length : lengths) {
        ExperimentConfig run = cfg;
        run.time_length = length;
        reports.push_back(run_experiment(run, ds));
    }
    return reports;
}

nlohmann::json to_json(const CvReport& report, bool include_timings) {
    nlohmann::json solver = nlohmann::json::array();
    for (const auto& s : report.solver) {
        solver.push_back({{"max_iterations", s.max_iterations}, {"converged", s.converged}});
    }
    nlohmann::json out = {
        {"dataset", report.dataset},
        {"graphs", report.graph_count},
        {"classes", report.class_count},
        {"time_grid", report.times},
        {"sigma", report.sigma},
        {"fold_accuracies", report.fold_accuracies},
        {"mean_accuracy", report.mean_accuracy},
        {"std_accuracy", report.std_accuracy},
        {"std_over", "folds"},
        {"confusion", report.confusion},
        {"solver", solver},
        {"stage_calls",
         {{"distance_matrix", report.distance_matrix_builds},
          {"gdtw_pairs", report.gdtw_pairs},
          {"kernel", report.kernel_builds}}},
        {"config", report.config},
    };
    if (include_timings) {
        nlohmann::json t = nlohmann::json::array();
        for (const auto& s : report.timings) {
            t.push_back({{"stage", s.stage}, {"seconds", s.seconds}});
        }
        out["timings"] = t;
    }
    return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<double>& lengths,
                     const std::vector<CvReport>& reports) {
    if (lengths.size() != reports.size()) {
        throw ContractError("one report per sweep length expected");
    }
    std::ostringstream buf;
    buf << std::setprecision(17);
    buf << "time_length,mean_accuracy,std_accuracy\n";
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        buf << lengths[i] << ',' << reports[i].mean_accuracy << ',' << reports[i].std_accuracy
            << '\n';
    }
    out << buf.str();
}

std::string format_report(const CvReport& report) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << "dataset      " << report.dataset << " (" << report.graph_count << " graphs, "
        << report.class_count << " classes)\n";
    out << "time grid    " << report.times.size() << " points, T = "
        << (report.times.empty() ? 0.0 : report.times.back()) << "\n";
    out << "sigma        " << report.sigma << "\n";
    out << "fold         accuracy\n";
    for (std::size_t f = 0; f < report.fold_accuracies.size(); ++f) {
        out << std::setw(4) << f << "         " << report.fold_accuracies[f] << "\n";
    }
    out << "mean (std)   " << report.mean_accuracy << " (" << report.std_accuracy << ")\n";
    out << "confusion    rows = true class, columns = predicted\n";
    for (const auto& row : report.confusion) {
        out << "            ";
        for (std::size_t v : row) {
            out << ' ' << std::setw(5) << v;
        }
        out << "\n";
    }
    if (!report.timings.empty()) {
        out << "stage        seconds\n";
        for (const auto& t : report.timings) {
            out << std::left << std::setw(13) << t.stage << std::right << t.seconds << "\n";
        }
    }
    return out.str();
}

} // namespace evk
