#ifndef COPRIME_LINALG_HPP
#define COPRIME_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace coprime {

/// Dense complex matrix. Storage is row-major: entry (i, j) lives at
/// data()[i * cols() + j].
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;
using cdouble = std::complex<double>;

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotPsdError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.
/// Column j of `vectors` pairs with `values[j]`.
template <typename Real>
struct EigenPair {
  RVector<Real> values;
  CMatrix<Real> vectors;
};

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

/// Sum of squared entry magnitudes.
template <typename Derived>
typename Derived::RealScalar frob_norm_sq(const Eigen::MatrixBase<Derived>& a) {
  return a.squaredNorm();
}

/// Largest |A(i,j) - conj(A(j,i))|.
template <typename Derived>
typename Derived::RealScalar hermitian_defect(const Eigen::MatrixBase<Derived>& a) {
  require_square(a, "hermitian_defect");
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool hermitian_check(const Eigen::MatrixBase<Derived>& a, typename Derived::RealScalar tol) {
  return a.rows() == a.cols() && hermitian_defect(a) <= tol;
}

/// Returns (A + A^H) / 2. The discarded anti-Hermitian part must not exceed
/// 1e-8 * ||A||_F; anything larger means the caller passed a non-Hermitian
/// matrix.
template <typename Derived>
CMatrix<typename Derived::RealScalar> symmetrize(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  require_square(a, "symmetrize");
  CMatrix<Real> h = (a + a.adjoint()) * Real(0.5);
  const Real skew = (a - a.adjoint()).norm() * Real(0.5);
  if (skew > Real(1e-8) * a.norm()) {
    throw NumericalError("symmetrize: input is not Hermitian (anti-Hermitian part " +
                         std::to_string(static_cast<double>(skew)) + ")");
  }
  return h;
}

/// Hermitian eigendecomposition with eigenvalues in descending order.
/// Equal eigenvalues keep the solver's relative order (stable sort).
template <typename Derived>
EigenPair<typename Derived::RealScalar> herm_evd(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  require_square(a, "herm_evd");
  const CMatrix<Real> h = symmetrize(a);
  using ColMajor = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<ColMajor> solver(ColMajor(h), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("herm_evd: eigensolver failed to converge");
  }
  const auto n = h.rows();
  // The solver reports ascending order; reverse it, then stable-sort to be
  // robust against any non-monotone output.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::reverse(order.begin(), order.end());
  const auto& ev = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return ev(x) > ev(y); });
  EigenPair<Real> out{RVector<Real>(n), CMatrix<Real>(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = ev(order[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = solver.eigenvectors().col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

/// U diag(values) U^H.
template <typename Real, typename VDerived>
CMatrix<Real> compose(const CMatrix<Real>& vectors, const Eigen::MatrixBase<VDerived>& values) {
  return vectors * values.template cast<std::complex<Real>>().asDiagonal() * vectors.adjoint();
}

/// Eigenvalues below zero but above -clip_tol are clamped; clip_tol defaults
/// to 1e-10 * max(1, ||A||_F).
template <typename Derived>
CMatrix<typename Derived::RealScalar> principal_sqrt(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  const auto evd = herm_evd(a);
  const Real clip_tol = Real(1e-10) * std::max(Real(1), a.norm());
  const Real lowest = evd.values(evd.values.size() - 1);
  if (lowest < -clip_tol) {
    throw NotPsdError("principal_sqrt: eigenvalue " + std::to_string(static_cast<double>(lowest)) +
                      " is below -" + std::to_string(static_cast<double>(clip_tol)));
  }
  const RVector<Real> roots = evd.values.cwiseMax(Real(0)).cwiseSqrt();
  CMatrix<Real> out = compose(evd.vectors, roots);
  return (out + out.adjoint()) * Real(0.5);
}

/// d_i(A): i <= 0 walks the i-th subdiagonal (entries A[j-i, j]), i > 0 the
/// i-th superdiagonal (entries A[j, j+i]), j = 0 .. D-|i|-1.
template <typename Derived>
CVector<typename Derived::RealScalar> get_diagonal(const Eigen::MatrixBase<Derived>& a, Eigen::Index offset) {
  require_square(a, "get_diagonal");
  const Eigen::Index d = a.rows();
  if (offset <= -d || offset >= d) {
    throw std::out_of_range("get_diagonal: offset " + std::to_string(offset) +
                            " outside (-" + std::to_string(d) + ", " + std::to_string(d) + ")");
  }
  const Eigen::Index len = d - (offset < 0 ? -offset : offset);
  CVector<typename Derived::RealScalar> out(len);
  for (Eigen::Index j = 0; j < len; ++j) {
    out(j) = offset <= 0 ? a(j - offset, j) : a(j, j + offset);
  }
  return out;
}

/// Inverse of get_diagonal over every offset: diagonals[k] holds offset
/// k - (D-1) and must have length D - |offset|.
template <typename Real>
CMatrix<Real> set_all_diagonals(const std::vector<CVector<Real>>& diagonals) {
  if (diagonals.empty() || diagonals.size() % 2 == 0) {
    throw DimensionError("set_all_diagonals: expected 2D-1 diagonals");
  }
  const auto d = static_cast<Eigen::Index>((diagonals.size() + 1) / 2);
  CMatrix<Real> out(d, d);
  for (Eigen::Index k = 0; k < 2 * d - 1; ++k) {
    const Eigen::Index offset = k - (d - 1);
    const auto& diag = diagonals[static_cast<std::size_t>(k)];
    const Eigen::Index len = d - (offset < 0 ? -offset : offset);
    if (diag.size() != len) {
      throw DimensionError("set_all_diagonals: diagonal " + std::to_string(offset) + " has length " +
                           std::to_string(diag.size()) + ", expected " + std::to_string(len));
    }
    for (Eigen::Index j = 0; j < len; ++j) {
      if (offset <= 0) {
        out(j - offset, j) = diag(j);
      } else {
        out(j, j + offset) = diag(j);
      }
    }
  }
  return out;
}

/// Largest deviation of any entry from the first entry of its diagonal; zero
/// iff Toeplitz.
template <typename Derived>
typename Derived::RealScalar toeplitz_defect(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  require_square(a, "toeplitz_defect");
  const Eigen::Index d = a.rows();
  Real worst = 0;
  for (Eigen::Index offset = 1 - d; offset <= d - 1; ++offset) {
    const auto diag = get_diagonal(a, offset);
    worst = std::max(worst, (diag.array() - diag(0)).abs().maxCoeff());
  }
  return worst;
}

}  // namespace coprime

#endif  // COPRIME_LINALG_HPP
