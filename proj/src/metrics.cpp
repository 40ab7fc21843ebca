#include "coprime/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace coprime {

double nse(const ComplexMatrix& estimate, const ComplexMatrix& truth) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols()) {
    throw DimensionError("nse: shape mismatch");
  }
  return (estimate - truth).squaredNorm() / truth.squaredNorm();
}

double nsse(const ComplexMatrix& estimate_basis, const ComplexMatrix& truth_basis) {
  if (estimate_basis.rows() != truth_basis.rows() || estimate_basis.cols() != truth_basis.cols() ||
      estimate_basis.cols() < 1) {
    throw DimensionError("nsse: basis shapes differ");
  }
  const auto k = estimate_basis.cols();
  for (const ComplexMatrix* b : {&estimate_basis, &truth_basis}) {
    const double defect = (b->adjoint() * *b - ComplexMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (defect > 1e-8) throw NumericalError("nsse: basis is not orthonormal (defect " + std::to_string(defect) + ")");
  }
  const ComplexMatrix diff =
      estimate_basis * estimate_basis.adjoint() - truth_basis * truth_basis.adjoint();
  return diff.squaredNorm() / (2.0 * static_cast<double>(k));
}

const SweepRow* SweepReport::find(const std::string& estimator, double snr_db, int q) const {
  for (const auto& row : rows) {
    if (row.estimator == estimator && row.snr_db == snr_db && row.q == q) return &row;
  }
  return nullptr;
}

SweepRow aggregate_cell(const std::vector<TrialReport>& reports, const std::string& estimator, double snr_db, int q) {
  SweepRow row{estimator, snr_db, q};
  double sum_nse = 0, sum_nse_sq = 0, sum_nsse = 0, sum_doa = 0, iters = 0;
  std::size_t doa_terms = 0;
  int converged = 0;
  for (const auto& rep : reports) {
    if (rep.failed) continue;
    ++row.n_trials;
    sum_nse += rep.nse;
    sum_nse_sq += rep.nse * rep.nse;
    sum_nsse += rep.nsse;
    for (double e : rep.doa_sq_errors) sum_doa += e;
    doa_terms += rep.doa_sq_errors.size();
    converged += rep.converged ? 1 : 0;
    iters += rep.iterations;
  }
  if (row.n_trials == 0) {
    throw std::runtime_error("aggregate: no usable trials for " + estimator);
  }
  const double n = row.n_trials;
  row.rmnse = std::sqrt(sum_nse / n);
  row.rmn_sse = std::sqrt(sum_nsse / n);
  row.rmse_deg = doa_terms > 0 ? std::sqrt(sum_doa / static_cast<double>(doa_terms)) : 0.0;
  row.convergence_rate = converged / n;
  row.mean_iters = iters / n;
  if (row.n_trials > 1) {
    const double mean = sum_nse / n;
    const double var = std::max(0.0, (sum_nse_sq - n * mean * mean) / (n - 1));
    row.nse_stderr = std::sqrt(var / n);
  }
  return row;
}

std::string to_csv(const SweepReport& report) {
  std::string out =
      "estimator,snr_db,q,rmnse,rmn_sse,rmse_deg,n_trials,convergence_rate,mean_iters,nse_stderr\n";
  char line[512];
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%s,%.4f,%d,%.12e,%.12e,%.12e,%d,%.6f,%.6f,%.12e\n", r.estimator.c_str(),
                  r.snr_db, r.q, r.rmnse, r.rmn_sse, r.rmse_deg, r.n_trials, r.convergence_rate, r.mean_iters,
                  r.nse_stderr);
    out += line;
  }
  return out;
}

std::string to_json(const SweepReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"estimator", r.estimator},
                    {"snr_db", r.snr_db},
                    {"q", r.q},
                    {"rmnse", r.rmnse},
                    {"rmn_sse", r.rmn_sse},
                    {"rmse_deg", r.rmse_deg},
                    {"n_trials", r.n_trials},
                    {"convergence_rate", r.convergence_rate},
                    {"mean_iters", r.mean_iters},
                    {"nse_stderr", r.nse_stderr}});
  }
  return nlohmann::json{{"rows", rows}}.dump(2) + "\n";
}

}  // namespace coprime
