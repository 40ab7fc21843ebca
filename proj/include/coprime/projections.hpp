#ifndef COPRIME_PROJECTIONS_HPP
#define COPRIME_PROJECTIONS_HPP

#include "coprime/linalg.hpp"

namespace coprime {

/// Nearest Toeplitz matrix in Frobenius norm: every diagonal is replaced by
/// its arithmetic mean.
template <typename Derived>
CMatrix<typename Derived::RealScalar> nearest_toeplitz(const Eigen::MatrixBase<Derived>& x) {
  using Real = typename Derived::RealScalar;
  require_square(x, "nearest_toeplitz");
  const Eigen::Index d = x.rows();
  CMatrix<Real> out(d, d);
  for (Eigen::Index offset = 1 - d; offset <= d - 1; ++offset) {
    const Eigen::Index len = d - (offset < 0 ? -offset : offset);
    std::complex<Real> sum = 0;
    for (Eigen::Index j = 0; j < len; ++j) sum += offset <= 0 ? x(j - offset, j) : x(j, j + offset);
    const std::complex<Real> mean = sum / Real(len);
    for (Eigen::Index j = 0; j < len; ++j) {
      if (offset <= 0) {
        out(j - offset, j) = mean;
      } else {
        out(j, j + offset) = mean;
      }
    }
  }
  return out;
}

/// Nearest Hermitian PSD matrix in Frobenius norm: negative eigenvalues of
/// the Hermitian part are clipped to zero.
template <typename Derived>
CMatrix<typename Derived::RealScalar> nearest_psd(const Eigen::MatrixBase<Derived>& x) {
  using Real = typename Derived::RealScalar;
  const auto evd = herm_evd(x);
  CMatrix<Real> out = compose(evd.vectors, evd.values.cwiseMax(Real(0)));
  return (out + out.adjoint()) * Real(0.5);
}

/// Replaces the dim - signal_dim smallest eigenvalues by their mean and
/// keeps the signal_dim largest.
template <typename Real>
RVector<Real> equalize_trailing(const RVector<Real>& descending, Eigen::Index signal_dim) {
  RVector<Real> out = descending;
  const Eigen::Index tail = descending.size() - signal_dim;
  out.tail(tail).setConstant(descending.tail(tail).mean());
  return out;
}

/// Eigenvalue correction with the eigenvectors held fixed. signal_dim must
/// lie in [0, D).
template <typename Derived>
CMatrix<typename Derived::RealScalar> eigen_correct(const Eigen::MatrixBase<Derived>& x, Eigen::Index signal_dim) {
  using Real = typename Derived::RealScalar;
  require_square(x, "eigen_correct");
  if (signal_dim < 0 || signal_dim >= x.rows()) {
    throw std::invalid_argument("eigen_correct: signal dimension " + std::to_string(signal_dim) +
                                " must be in [0, " + std::to_string(x.rows()) + ")");
  }
  const auto evd = herm_evd(x);
  CMatrix<Real> out = compose(evd.vectors, equalize_trailing(evd.values, signal_dim));
  return (out + out.adjoint()) * Real(0.5);
}

}  // namespace coprime

#endif  // COPRIME_PROJECTIONS_HPP
