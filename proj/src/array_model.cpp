#include "coprime/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

namespace coprime {

CoprimeGeometry build_geometry(int m, int n) {
  if (m < 1 || m >= n) {
    throw ValidationError("coprime pair requires 1 <= M < N, got (" + std::to_string(m) + ", " +
                          std::to_string(n) + ")");
  }
  if (std::gcd(m, n) != 1) {
    throw ValidationError("M and N must be coprime, got (" + std::to_string(m) + ", " +
                          std::to_string(n) + ")");
  }
  CoprimeGeometry geom;
  geom.m = m;
  geom.n = n;

  std::set<int> locs;
  for (int i = 0; i < n; ++i) locs.insert(i * m);
  for (int i = 1; i <= 2 * m - 1; ++i) locs.insert(i * n);
  geom.locations.assign(locs.begin(), locs.end());
  // The two subarrays only share the origin, which the second set excludes.
  if (static_cast<int>(geom.locations.size()) != 2 * m + n - 1) {
    throw ValidationError("coprime construction produced a duplicate location");
  }

  std::set<int> diffs;
  for (int a : geom.locations)
    for (int b : geom.locations) diffs.insert(a - b);
  geom.difference_set.assign(diffs.begin(), diffs.end());

  const int lp = geom.coarray_size();
  const int count = geom.num_elements();
  geom.lag_indices.assign(static_cast<std::size_t>(2 * lp - 1), {});
  for (int col = 0; col < count; ++col) {
    for (int row = 0; row < count; ++row) {
      const int lag = geom.locations[static_cast<std::size_t>(row)] - geom.locations[static_cast<std::size_t>(col)];
      if (lag > -lp && lag < lp) {
        geom.lag_indices[static_cast<std::size_t>(lag + lp - 1)].push_back(geom.flat_index(row, col));
      }
    }
  }
  for (int lag = 1 - lp; lag <= lp - 1; ++lag) {
    if (geom.lag_indices[static_cast<std::size_t>(lag + lp - 1)].empty()) {
      throw ValidationError("coarray segment has a hole at lag " + std::to_string(lag));
    }
  }
  return geom;
}

const std::vector<int>& CoprimeGeometry::indices_for_lag(int lag) const {
  const int lp = coarray_size();
  if (lag <= -lp || lag >= lp) {
    throw std::out_of_range("lag " + std::to_string(lag) + " outside the uniform coarray segment");
  }
  return lag_indices[static_cast<std::size_t>(lag + lp - 1)];
}

int CoprimeGeometry::lag_of(int flat) const {
  const int count = num_elements();
  return locations[static_cast<std::size_t>(flat % count)] - locations[static_cast<std::size_t>(flat / count)];
}

void validate(const CoprimeGeometry& geom, const Scenario& scenario) {
  const int k = scenario.num_sources();
  if (static_cast<int>(scenario.powers.size()) != k) {
    throw ValidationError("scenario has " + std::to_string(k) + " angles but " +
                          std::to_string(scenario.powers.size()) + " powers");
  }
  if (k >= geom.coarray_size()) {
    throw ValidationError("at most MN+M-1 = " + std::to_string(geom.coarray_size() - 1) +
                          " sources are identifiable, got " + std::to_string(k));
  }
  for (double t : scenario.thetas_deg) {
    if (!(t > -90.0 && t <= 90.0)) {
      throw ValidationError("angle " + std::to_string(t) + " deg outside (-90, 90]");
    }
  }
  for (double p : scenario.powers) {
    if (!(p > 0.0)) throw ValidationError("source powers must be positive");
  }
  if (!(scenario.noise_var >= 0.0)) throw ValidationError("noise variance must be non-negative");
  if (scenario.snapshots < 1) throw ValidationError("snapshot count must be at least 1");
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

cdouble phase_base(double theta_deg) {
  return std::polar(1.0, -std::numbers::pi * std::sin(deg_to_rad(theta_deg)));
}

namespace {

// v^p evaluated directly from the phase to avoid accumulated drift.
cdouble phasor(double theta_deg, int power) {
  return std::polar(1.0, -std::numbers::pi * std::sin(deg_to_rad(theta_deg)) * power);
}

void check_angle(double theta_deg) {
  if (!(theta_deg > -90.0 && theta_deg <= 90.0)) {
    throw ValidationError("angle " + std::to_string(theta_deg) + " deg outside (-90, 90]");
  }
}

}  // namespace

ComplexVector steering_vector(const CoprimeGeometry& geom, double theta_deg) {
  check_angle(theta_deg);
  ComplexVector s(geom.num_elements());
  for (int i = 0; i < geom.num_elements(); ++i) s(i) = phasor(theta_deg, geom.locations[static_cast<std::size_t>(i)]);
  return s;
}

ComplexVector coarray_steering(const CoprimeGeometry& geom, double theta_deg) {
  check_angle(theta_deg);
  ComplexVector s(geom.coarray_size());
  for (int i = 0; i < geom.coarray_size(); ++i) s(i) = phasor(theta_deg, i);
  return s;
}

ComplexMatrix steering_matrix(const CoprimeGeometry& geom, const std::vector<double>& thetas_deg) {
  ComplexMatrix s(geom.num_elements(), static_cast<Eigen::Index>(thetas_deg.size()));
  for (std::size_t k = 0; k < thetas_deg.size(); ++k) s.col(static_cast<Eigen::Index>(k)) = steering_vector(geom, thetas_deg[k]);
  return s;
}

ComplexMatrix coarray_steering_matrix(const CoprimeGeometry& geom, const std::vector<double>& thetas_deg) {
  ComplexMatrix s(geom.coarray_size(), static_cast<Eigen::Index>(thetas_deg.size()));
  for (std::size_t k = 0; k < thetas_deg.size(); ++k) s.col(static_cast<Eigen::Index>(k)) = coarray_steering(geom, thetas_deg[k]);
  return s;
}

namespace {

ComplexMatrix signal_plus_noise(const ComplexMatrix& s, const std::vector<double>& powers, double noise_var) {
  const Eigen::Index dim = s.rows();
  ComplexMatrix r = ComplexMatrix::Identity(dim, dim) * noise_var;
  if (s.cols() > 0) {
    const RealVector d = Eigen::Map<const RealVector>(powers.data(), static_cast<Eigen::Index>(powers.size()));
    r += s * d.cast<cdouble>().asDiagonal() * s.adjoint();
  }
  return r;
}

}  // namespace

ComplexMatrix nominal_phys_cov(const CoprimeGeometry& geom, const Scenario& scenario) {
  validate(geom, scenario);
  return signal_plus_noise(steering_matrix(geom, scenario.thetas_deg), scenario.powers, scenario.noise_var);
}

ComplexMatrix nominal_coarray_cov(const CoprimeGeometry& geom, const Scenario& scenario) {
  validate(geom, scenario);
  return signal_plus_noise(coarray_steering_matrix(geom, scenario.thetas_deg), scenario.powers, scenario.noise_var);
}

}  // namespace coprime
