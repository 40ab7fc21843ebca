#ifndef COPRIME_COARRAY_SAMPLING_HPP
#define COPRIME_COARRAY_SAMPLING_HPP

#include <string_view>

#include "coprime/array_model.hpp"

namespace coprime {

enum class SamplingKind { Selection, Averaging };

std::string_view to_string(SamplingKind kind);
SamplingKind parse_sampling_kind(std::string_view name);

/// Autocorrelation at lags 1-L' .. L'-1; values(k) is lag k - (L'-1).
struct CoarrayVector {
  ComplexVector values;
  SamplingKind kind = SamplingKind::Averaging;

  int half_length() const { return static_cast<int>((values.size() + 1) / 2); }
  cdouble at_lag(int lag) const { return values(lag + half_length() - 1); }
};

/// One entry per lag: the smallest flat index with that lag.
CoarrayVector sample_selection(const CoprimeGeometry& geom, const ComplexMatrix& r);

/// One entry per lag: the mean over every physical pair with that lag.
CoarrayVector sample_averaging(const CoprimeGeometry& geom, const ComplexMatrix& r);

CoarrayVector sample(const CoprimeGeometry& geom, const ComplexMatrix& r, SamplingKind kind);

/// Toeplitz L' x L' matrix with entry (m, n) equal to the lag m - n value.
ComplexMatrix augmented_matrix(const CoarrayVector& v);

}  // namespace coprime

#endif  // COPRIME_COARRAY_SAMPLING_HPP
