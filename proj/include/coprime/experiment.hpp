#ifndef COPRIME_EXPERIMENT_HPP
#define COPRIME_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coprime/doa_music.hpp"
#include "coprime/estimators.hpp"
#include "coprime/metrics.hpp"

namespace coprime {

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::Structured;
  /// Sampling used by the PSR chain; the AM kinds fix their own.
  SamplingKind sampling = SamplingKind::Selection;
  StructuredConfig structured;
  std::string label;
};

/// Experiment description, normally loaded from JSON (schema_version 1).
struct ExperimentConfig {
  int m = 3;
  int n = 5;
  std::vector<double> thetas_deg;
  double source_power_db = 0;
  double noise_power_db = 0;
  /// Snapshot count for single-shot commands; sweeps use q_list.
  int snapshots = 150;
  std::vector<double> snr_db;
  std::vector<int> q_list;
  int n_trials = 1;
  std::vector<EstimatorSpec> estimators;
  double grid_step_deg = 0.05;
  std::uint64_t master_seed = 0;
  /// Feed the nominal R_y to every estimator instead of a sample covariance.
  bool nominal_statistics = false;
  std::filesystem::path output_dir = "results";
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& cfg);

/// Equal-power sources at snr_db + noise_power_db dB over noise at
/// noise_power_db dB.
Scenario make_scenario(const ExperimentConfig& cfg, double snr_db, int snapshots, std::uint64_t seed);

struct EstimateOutcome {
  ComplexMatrix matrix;
  bool converged = true;
  int iterations = 0;
  bool eigen_tie = false;
};

EstimateOutcome run_estimator(const EstimatorSpec& spec, const CoprimeGeometry& geom, const ComplexMatrix& ry);

/// Ground truth shared by every trial of one (SNR, Q) cell.
struct CellTruth {
  Scenario scenario;
  ComplexMatrix phys_cov;
  ComplexMatrix coarray_cov;
  ComplexMatrix signal_basis;
};

CellTruth make_cell_truth(const ExperimentConfig& cfg, const CoprimeGeometry& geom, double snr_db, int q);

/// One realization: simulate, sample covariance, then every estimator on
/// the same snapshots. Estimator exceptions are recorded, not rethrown.
std::vector<TrialReport> run_trial(const ExperimentConfig& cfg, const CoprimeGeometry& geom, const CellTruth& truth,
                                   int snr_index, int q_index, int realization);

struct SweepOptions {
  int threads = 1;
  /// When set, rows are appended to sweep.partial.csv as cells finish and
  /// sweep.csv / sweep.json are written at the end.
  std::optional<std::filesystem::path> output_dir;
  std::function<void(const std::string&)> progress;
};

/// Per-trial reports for one cell, in realization order regardless of
/// thread count.
std::vector<TrialReport> run_cell(const ExperimentConfig& cfg, const CoprimeGeometry& geom, int snr_index,
                                  int q_index, int threads);

SweepReport run_sweep(const ExperimentConfig& cfg, const SweepOptions& options = {});

}  // namespace coprime

#endif  // COPRIME_EXPERIMENT_HPP
