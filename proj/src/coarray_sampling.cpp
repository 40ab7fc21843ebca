#include "coprime/coarray_sampling.hpp"

#include <string>

namespace coprime {

std::string_view to_string(SamplingKind kind) {
  return kind == SamplingKind::Selection ? "selection" : "averaging";
}

SamplingKind parse_sampling_kind(std::string_view name) {
  if (name == "selection") return SamplingKind::Selection;
  if (name == "averaging") return SamplingKind::Averaging;
  throw ValidationError("unknown sampling kind '" + std::string(name) + "'");
}

namespace {

void check_shape(const CoprimeGeometry& geom, const ComplexMatrix& r) {
  if (r.rows() != geom.num_elements() || r.cols() != geom.num_elements()) {
    throw DimensionError("coarray sampling: expected a " + std::to_string(geom.num_elements()) + "x" +
                         std::to_string(geom.num_elements()) + " covariance");
  }
}

// Flat index j = col * L + row of the column-stacked vectorization.
cdouble vec_entry(const ComplexMatrix& r, int flat) {
  const auto count = static_cast<int>(r.rows());
  return r(flat % count, flat / count);
}

}  // namespace

CoarrayVector sample_selection(const CoprimeGeometry& geom, const ComplexMatrix& r) {
  check_shape(geom, r);
  CoarrayVector out{ComplexVector(geom.num_lags()), SamplingKind::Selection};
  for (int k = 0; k < geom.num_lags(); ++k) {
    out.values(k) = vec_entry(r, geom.lag_indices[static_cast<std::size_t>(k)].front());
  }
  return out;
}

CoarrayVector sample_averaging(const CoprimeGeometry& geom, const ComplexMatrix& r) {
  check_shape(geom, r);
  CoarrayVector out{ComplexVector(geom.num_lags()), SamplingKind::Averaging};
  for (int k = 0; k < geom.num_lags(); ++k) {
    const auto& idx = geom.lag_indices[static_cast<std::size_t>(k)];
    cdouble acc = 0.0;
    for (int j : idx) acc += vec_entry(r, j);
    out.values(k) = acc / static_cast<double>(idx.size());
  }
  return out;
}

CoarrayVector sample(const CoprimeGeometry& geom, const ComplexMatrix& r, SamplingKind kind) {
  return kind == SamplingKind::Selection ? sample_selection(geom, r) : sample_averaging(geom, r);
}

ComplexMatrix augmented_matrix(const CoarrayVector& v) {
  if (v.values.size() < 1 || v.values.size() % 2 == 0) {
    throw DimensionError("augmented_matrix: lag vector must have odd length 2L'-1, got " +
                         std::to_string(v.values.size()));
  }
  const int lp = v.half_length();
  ComplexMatrix out(lp, lp);
  for (int row = 0; row < lp; ++row)
    for (int col = 0; col < lp; ++col) out(row, col) = v.values(row - col + lp - 1);
  return out;
}

}  // namespace coprime
