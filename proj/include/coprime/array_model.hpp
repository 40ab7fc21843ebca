#ifndef COPRIME_ARRAY_MODEL_HPP
#define COPRIME_ARRAY_MODEL_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "coprime/linalg.hpp"

namespace coprime {

class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Coprime array built from the pair (M, N), M < N, with element locations
/// in units of half a wavelength.
///
/// Physical-covariance entries are addressed by the flat index of the
/// column-stacked vectorization, j = col * L + row. Entry j carries lag
/// locations[row] - locations[col], so R(row, col) = v^lag for a single
/// unit-power source.
struct CoprimeGeometry {
  int m = 0;
  int n = 0;
  std::vector<int> locations;   ///< sorted, L entries
  std::vector<int> difference_set;  ///< all distinct pairwise differences, sorted
  /// lag_indices[n + L' - 1] holds every flat index with lag n, ascending,
  /// for n in {1-L', ..., L'-1}.
  std::vector<std::vector<int>> lag_indices;

  int num_elements() const { return static_cast<int>(locations.size()); }
  /// Half-length L' = MN + M of the hole-free coarray segment.
  int coarray_size() const { return m * n + m; }
  int num_lags() const { return 2 * coarray_size() - 1; }
  const std::vector<int>& indices_for_lag(int lag) const;
  int flat_index(int row, int col) const { return col * num_elements() + row; }
  int lag_of(int flat) const;
};

/// Source and noise statistics plus the snapshot budget. Angles are in
/// degrees on (-90, 90].
struct Scenario {
  std::vector<double> thetas_deg;
  std::vector<double> powers;  ///< linear scale, one per source
  double noise_var = 1.0;
  int snapshots = 1;
  std::uint64_t seed = 0;

  int num_sources() const { return static_cast<int>(thetas_deg.size()); }
};

CoprimeGeometry build_geometry(int m, int n);

void validate(const CoprimeGeometry& geom, const Scenario& scenario);

double deg_to_rad(double deg);
double db_to_linear(double db);

/// v(theta) = exp(-i pi sin theta).
cdouble phase_base(double theta_deg);

/// Entry i is v(theta)^locations[i].
ComplexVector steering_vector(const CoprimeGeometry& geom, double theta_deg);

/// Entry m is v(theta)^m, m = 0 .. L'-1.
ComplexVector coarray_steering(const CoprimeGeometry& geom, double theta_deg);

/// Columns are steering vectors for each source.
ComplexMatrix steering_matrix(const CoprimeGeometry& geom, const std::vector<double>& thetas_deg);
ComplexMatrix coarray_steering_matrix(const CoprimeGeometry& geom, const std::vector<double>& thetas_deg);

/// S diag(d) S^H + sigma^2 I_L.
ComplexMatrix nominal_phys_cov(const CoprimeGeometry& geom, const Scenario& scenario);

/// S_co diag(d) S_co^H + sigma^2 I_L'.
ComplexMatrix nominal_coarray_cov(const CoprimeGeometry& geom, const Scenario& scenario);

}  // namespace coprime

#endif  // COPRIME_ARRAY_MODEL_HPP
