#ifndef COPRIME_ESTIMATORS_HPP
#define COPRIME_ESTIMATORS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "coprime/coarray_sampling.hpp"
#include "coprime/projections.hpp"

namespace coprime {

enum class EstimatorKind { AmSelection, AmAveraging, Psr, Structured };

std::string_view to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(std::string_view name);

/// Options for the alternating Toeplitz / PSD / eigenvalue-correction
/// iteration.
struct StructuredConfig {
  int signal_dim = 1;
  /// Stop once ||P_{i+1} - P_i||_F <= eps (times ||P_0||_F when relative).
  double eps = 1e-8;
  bool relative_eps = true;
  int max_iters = 1000;
};

void validate(const StructuredConfig& cfg, int coarray_size);

/// Squared Frobenius norms of Q_i, R_i and P_{i+1} for one iteration.
struct NormTraceEntry {
  double q_norm_sq = 0;
  double r_norm_sq = 0;
  double p_next_norm_sq = 0;
};

struct StructuredEstimateResult {
  ComplexMatrix matrix;
  int iterations = 0;
  bool converged = false;
  /// Absolute threshold that was applied to ||P_{i+1} - P_i||_F.
  double eps_abs = 0;
  /// Set when the K-th and (K+1)-th eigenvalues came within 1e-10 of each
  /// other in some iteration, so the signal/noise split relied on ordering.
  bool eigen_tie = false;
  std::vector<NormTraceEntry> norm_trace;

  /// Q_0, R_0, P_1, Q_1, ... as one sequence.
  std::vector<double> flattened_trace() const;
};

/// Augmented (Toeplitz) matrix from the chosen sampling of R_y.
ComplexMatrix estimate_am(const CoprimeGeometry& geom, const ComplexMatrix& ry, SamplingKind kind);

/// sqrt(L') times the principal square root of the spatially smoothed
/// matrix (1/L') R_am R_am^H. Defaults to selection sampling.
ComplexMatrix estimate_psr(const CoprimeGeometry& geom, const ComplexMatrix& ry,
                           SamplingKind kind = SamplingKind::Selection);

/// Runs Q_i = Phi(P_i), R_i = Psi(Q_i), P_{i+1} = Omega(R_i) from `initial`.
StructuredEstimateResult structured_iterate(const ComplexMatrix& initial, const StructuredConfig& cfg);

/// Structured estimate initialized at the averaging-sampled PSR matrix.
StructuredEstimateResult estimate_structured(const CoprimeGeometry& geom, const ComplexMatrix& ry,
                                             const StructuredConfig& cfg);

/// Numerical evidence for the four structure properties of a coarray
/// covariance estimate.
struct StructureCertificate {
  double hermitian_defect = 0;
  double min_eigenvalue = 0;
  double toeplitz_defect = 0;
  /// max - min over the D - K smallest eigenvalues.
  double noise_eigen_spread = 0;
};

StructureCertificate certify(const ComplexMatrix& r, int signal_dim);

/// One CSV line per matrix row, each entry written as two columns "re,im"
/// (so 2D columns per line), no header, %.17g.
std::string to_matrix_csv(const ComplexMatrix& r);
ComplexMatrix parse_matrix_csv(const std::string& text);

}  // namespace coprime

#endif  // COPRIME_ESTIMATORS_HPP
