#include "coprime/estimators.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace coprime {

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::AmSelection: return "am_selection";
    case EstimatorKind::AmAveraging: return "am_averaging";
    case EstimatorKind::Psr: return "psr";
    case EstimatorKind::Structured: return "structured";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
  if (name == "am_selection") return EstimatorKind::AmSelection;
  if (name == "am_averaging") return EstimatorKind::AmAveraging;
  if (name == "psr") return EstimatorKind::Psr;
  if (name == "structured") return EstimatorKind::Structured;
  throw ValidationError("unknown estimator kind '" + std::string(name) + "'");
}

void validate(const StructuredConfig& cfg, int coarray_size) {
  if (cfg.signal_dim < 1 || cfg.signal_dim > coarray_size - 1) {
    throw ValidationError("structured estimator: signal dimension " + std::to_string(cfg.signal_dim) +
                          " must be in [1, " + std::to_string(coarray_size - 1) + "]");
  }
  if (!(cfg.eps > 0)) throw ValidationError("structured estimator: eps must be positive");
  if (cfg.max_iters < 1) throw ValidationError("structured estimator: max_iters must be at least 1");
}

std::vector<double> StructuredEstimateResult::flattened_trace() const {
  std::vector<double> flat;
  flat.reserve(3 * norm_trace.size());
  for (const auto& e : norm_trace) {
    flat.push_back(e.q_norm_sq);
    flat.push_back(e.r_norm_sq);
    flat.push_back(e.p_next_norm_sq);
  }
  return flat;
}

ComplexMatrix estimate_am(const CoprimeGeometry& geom, const ComplexMatrix& ry, SamplingKind kind) {
  return augmented_matrix(sample(geom, ry, kind));
}

ComplexMatrix estimate_psr(const CoprimeGeometry& geom, const ComplexMatrix& ry, SamplingKind kind) {
  const ComplexMatrix am = estimate_am(geom, ry, kind);
  const double lp = geom.coarray_size();
  const ComplexMatrix smoothed = am * am.adjoint() / lp;
  return std::sqrt(lp) * principal_sqrt(smoothed);
}

StructuredEstimateResult structured_iterate(const ComplexMatrix& initial, const StructuredConfig& cfg) {
  require_square(initial, "structured_iterate");
  validate(cfg, static_cast<int>(initial.rows()));

  StructuredEstimateResult out;
  out.eps_abs = cfg.relative_eps ? cfg.eps * initial.norm() : cfg.eps;
  ComplexMatrix p = symmetrize(initial);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const ComplexMatrix q = nearest_toeplitz(p);

    // Psi and Omega share one eigenbasis: clipping keeps the descending
    // order, so Omega acts on the clipped spectrum in the same basis.
    const auto evd = herm_evd(q);
    const RealVector clipped = evd.values.cwiseMax(0.0);
    ComplexMatrix r = compose(evd.vectors, clipped);
    r = (r + r.adjoint()) * 0.5;
    const Eigen::Index k = cfg.signal_dim;
    if (std::abs(clipped(k - 1) - clipped(k)) <= 1e-10) out.eigen_tie = true;
    ComplexMatrix p_next = compose(evd.vectors, equalize_trailing(clipped, k));
    p_next = (p_next + p_next.adjoint()) * 0.5;

    out.norm_trace.push_back({q.squaredNorm(), r.squaredNorm(), p_next.squaredNorm()});
    const double step = (p_next - p).norm();
    p = std::move(p_next);
    out.iterations = iter + 1;
    if (step <= out.eps_abs) {
      out.converged = true;
      break;
    }
  }
  out.matrix = std::move(p);
  return out;
}

StructuredEstimateResult estimate_structured(const CoprimeGeometry& geom, const ComplexMatrix& ry,
                                             const StructuredConfig& cfg) {
  validate(cfg, geom.coarray_size());
  return structured_iterate(estimate_psr(geom, ry, SamplingKind::Averaging), cfg);
}

StructureCertificate certify(const ComplexMatrix& r, int signal_dim) {
  require_square(r, "certify");
  StructureCertificate cert;
  cert.hermitian_defect = hermitian_defect(r);
  cert.toeplitz_defect = toeplitz_defect(r);
  const ComplexMatrix h = (r + r.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(h), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();  // ascending
  cert.min_eigenvalue = ev(0);
  const Eigen::Index tail = r.rows() - signal_dim;
  if (tail > 0) cert.noise_eigen_spread = ev(tail - 1) - ev(0);
  return cert;
}

std::string to_matrix_csv(const ComplexMatrix& r) {
  std::string out;
  char buf[64];
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%s%.17g,%.17g", j == 0 ? "" : ",", r(i, j).real(), r(i, j).imag());
      out += buf;
    }
    out += '\n';
  }
  return out;
}

ComplexMatrix parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<double> vals;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) vals.push_back(std::stod(cell));
    rows.push_back(std::move(vals));
  }
  if (rows.empty() || rows.front().size() % 2 != 0) throw DimensionError("matrix CSV: malformed content");
  ComplexMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size() / 2));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw DimensionError("matrix CSV: ragged rows");
    for (std::size_t j = 0; j < rows[i].size() / 2; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cdouble(rows[i][2 * j], rows[i][2 * j + 1]);
    }
  }
  return out;
}

}  // namespace coprime
