#pragma once

#include "evokernel/augmentation.hpp"
#include "evokernel/embedding.hpp"
#include "evokernel/kernel.hpp"
#include "evokernel/spectral_heat.hpp"
#include "evokernel/svm.hpp"
#include "evokernel/tu_dataset.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace evk {

/// Full configuration of a cross-validated run. Defaults follow the
/// molecule setting (T = 1, dt = 0.1); social networks use T = 2, dt = 0.2.
struct ExperimentConfig {
    std::filesystem::path dataset_dir;
    std::string dataset_name;
    double time_length = 1.0;
    double time_interval = 0.1;
    BoltzmannConfig boltzmann{};
    double u0 = 1.0;
    MetricConfig metric{};
    double gamma_scale = 1.0;
    PsdRepair psd = PsdRepair::Clip;
    double c = 1.0;
    int folds = 10;
    std::uint64_t seed = 42;
    bool cumulative = false;
    HeatSelector heat_method = HeatSelector::Exact;
    SvmOptions svm{};
};

/// Throws ConfigError on an invalid configuration.
void validate(const ExperimentConfig& cfg);

nlohmann::json to_json(const ExperimentConfig& cfg);

struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Each class is shuffled with the (seed, Folds) stream and dealt
/// round-robin (continuing across classes, ascending class id) into the
/// folds. Throws ConfigError when a class has fewer than `folds` members.
std::vector<Fold> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed);

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct FoldSolverInfo {
    std::size_t max_iterations = 0;
    bool converged = true;
};

struct CvReport {
    std::string dataset;
    std::size_t graph_count = 0;
    std::size_t class_count = 0;
    std::vector<double> times;
    double sigma = 0.0;
    std::vector<double> fold_accuracies;
    double mean_accuracy = 0.0;
    /// Population standard deviation over folds.
    double std_accuracy = 0.0;
    /// confusion[true][predicted], summed over folds.
    std::vector<std::vector<std::size_t>> confusion;
    std::vector<FoldSolverInfo> solver;
    std::uint64_t distance_matrix_builds = 0;
    std::uint64_t gdtw_pairs = 0;
    std::uint64_t kernel_builds = 0;
    std::vector<StageTiming> timings;
    nlohmann::json config;
};

/// Matrices shared by all folds of a run.
struct ExperimentArtifacts {
    DistanceMatrix distances;
    EvolutionKernelMatrix kernel;
};

/// Episodes and the distance/kernel matrices are built once; each fold then
/// trains on its train x train block and predicts its test rows. Errors are
/// rethrown as StageError tagged with the failing stage.
CvReport run_experiment(const ExperimentConfig& cfg, ExperimentArtifacts* artifacts = nullptr);
CvReport run_experiment(const ExperimentConfig& cfg, const GraphDataset& ds,
                        ExperimentArtifacts* artifacts = nullptr);

/// One run per time length (ascending; ConfigError otherwise).
std::vector<CvReport> sweep_time_length(const ExperimentConfig& cfg,
                                        const std::vector<double>& lengths);
std::vector<CvReport> sweep_time_length(const ExperimentConfig& cfg, const GraphDataset& ds,
                                        const std::vector<double>& lengths);

/// Timings are wall-clock and excluded unless requested, so that equal
/// configurations give byte-identical JSON.
nlohmann::json to_json(const CvReport& report, bool include_timings = false);

/// "time_length,mean_accuracy,std_accuracy" header and one row per report.
void write_sweep_csv(std::ostream& out, const std::vector<double>& lengths,
                     const std::vector<CvReport>& reports);

/// Human-readable summary table.
std::string format_report(const CvReport& report);

} // namespace evk
