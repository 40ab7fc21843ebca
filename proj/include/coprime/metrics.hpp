#ifndef COPRIME_METRICS_HPP
#define COPRIME_METRICS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "coprime/linalg.hpp"

namespace coprime {

/// ||R_hat - R_co||_F^2 / ||R_co||_F^2.
double nse(const ComplexMatrix& estimate, const ComplexMatrix& truth);

/// ||Q_hat Q_hat^H - Q_co Q_co^H||_F^2 / (2K) for orthonormal L' x K bases.
double nsse(const ComplexMatrix& estimate_basis, const ComplexMatrix& truth_basis);

/// One estimator's outcome on one realization.
struct TrialReport {
  std::string estimator;
  int snr_index = 0;
  int q_index = 0;
  int realization = 0;
  double nse = 0;
  double nsse = 0;
  std::vector<double> doa_sq_errors;
  bool converged = true;
  int iterations = 0;
  bool failed = false;
  std::string error;
};

/// Aggregates for one (estimator, SNR, Q) cell.
struct SweepRow {
  std::string estimator;
  double snr_db = 0;
  int q = 0;
  double rmnse = 0;
  double rmn_sse = 0;
  double rmse_deg = 0;
  int n_trials = 0;
  double convergence_rate = 0;
  double mean_iters = 0;
  /// Standard error of the per-trial NSE mean.
  double nse_stderr = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;

  const SweepRow* find(const std::string& estimator, double snr_db, int q) const;
};

/// Root-mean aggregates over the reports of one cell. Failed trials are
/// skipped; non-converged structured trials are kept.
SweepRow aggregate_cell(const std::vector<TrialReport>& reports, const std::string& estimator, double snr_db, int q);

std::string to_csv(const SweepReport& report);
std::string to_json(const SweepReport& report);

}  // namespace coprime

#endif  // COPRIME_METRICS_HPP
