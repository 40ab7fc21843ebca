#include <algorithm>
#include <cmath>

#include "coprime/coarray_sampling.hpp"
#include "coprime/snapshot_sim.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace coprime;

namespace {

// Block formula F (I_L' kron r) with F_m = [0_{L'x(L'-m)}, I_L', 0_{L'x(m-1)}],
// assembled from explicit matrices.
ComplexMatrix block_formula(const ComplexVector& r) {
  const auto lp = (r.size() + 1) / 2;
  const auto width = 2 * lp - 1;
  ComplexMatrix f = ComplexMatrix::Zero(lp, lp * width);
  for (Eigen::Index m = 1; m <= lp; ++m) {
    f.block(0, (m - 1) * width + (lp - m), lp, lp) = ComplexMatrix::Identity(lp, lp);
  }
  ComplexMatrix kron = ComplexMatrix::Zero(lp * width, lp);
  for (Eigen::Index c = 0; c < lp; ++c) kron.block(c * width, c, width, 1) = r;
  return f * kron;
}

// Brute-force scan of every element pair; independent of the lag tables.
ComplexVector scan_average(const CoprimeGeometry& g, const ComplexMatrix& r) {
  const int lp = g.coarray_size();
  ComplexVector sum = ComplexVector::Zero(2 * lp - 1);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(2 * lp - 1);
  for (int a = 0; a < g.num_elements(); ++a) {
    for (int b = 0; b < g.num_elements(); ++b) {
      const int lag = g.locations[static_cast<std::size_t>(a)] - g.locations[static_cast<std::size_t>(b)];
      if (std::abs(lag) >= lp) continue;
      sum(lag + lp - 1) += r(a, b);
      count(lag + lp - 1) += 1;
    }
  }
  return sum.cwiseQuotient(count.cast<cdouble>());
}

}  // namespace

TEST_CASE("identity covariance has only a zero-lag autocorrelation") {
  const auto g = build_geometry(2, 3);
  const ComplexMatrix eye = ComplexMatrix::Identity(6, 6);
  for (auto kind : {SamplingKind::Selection, SamplingKind::Averaging}) {
    const auto v = sample(g, eye, kind);
    CHECK(v.values.size() == 15);
    CHECK(v.kind == kind);
    for (int lag = -7; lag <= 7; ++lag) CHECK(v.at_lag(lag) == cdouble(lag == 0 ? 1.0 : 0.0, 0));
  }
  CHECK(g.indices_for_lag(0).size() == 6);
}

TEST_CASE("single noise-free source samples to the phasor sequence") {
  const auto g = build_geometry(3, 5);
  const Scenario sc{{37.0}, {1.0}, 0.0, 1, 0};
  const auto v = sample_selection(g, nominal_phys_cov(g, sc));
  const cdouble base = phase_base(37.0);
  for (int lag = -17; lag <= 17; ++lag) CHECK(std::abs(v.at_lag(lag) - std::pow(base, lag)) < 1e-12);
}

TEST_CASE("selection uses the smallest flat index of each lag") {
  const auto g = build_geometry(2, 3);
  ComplexMatrix r(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r(i, j) = cdouble(g.flat_index(i, j), 0);
  const auto v = sample_selection(g, r);
  for (int lag = -7; lag <= 7; ++lag) {
    int smallest = 1 << 30;
    for (int j = 0; j < 36; ++j)
      if (g.lag_of(j) == lag) smallest = std::min(smallest, j);
    CHECK(v.at_lag(lag).real() == smallest);
  }
}

TEST_CASE("selection and averaging coincide on nominal statistics") {
  const auto g = build_geometry(3, 5);
  const Scenario sc{coprime::testing::source_grid_thetas(), std::vector<double>(13, 0.4), 1.0, 1, 0};
  const ComplexMatrix ry = nominal_phys_cov(g, sc);
  CHECK((sample_selection(g, ry).values - sample_averaging(g, ry).values).norm() < 1e-12);
}

TEST_CASE("averaging matches a brute-force pair scan and is conjugate-symmetric") {
  std::mt19937_64 rng(8);
  const auto g = build_geometry(3, 5);
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix r = coprime::testing::random_hermitian(rng, 10);
    const auto v = sample_averaging(g, r);
    CHECK((v.values - scan_average(g, r)).norm() < 1e-12);
    for (int lag = 0; lag <= 17; ++lag) CHECK(std::abs(v.at_lag(-lag) - std::conj(v.at_lag(lag))) <= 1e-12);
  }
}

TEST_CASE("averaging has lower median error than selection") {
  const auto g = build_geometry(3, 5);
  Scenario sc{coprime::testing::source_grid_thetas(), std::vector<double>(13, db_to_linear(0.0)), 1.0, 150, 0};
  const ComplexMatrix ry = nominal_phys_cov(g, sc);
  const ComplexVector truth = sample_averaging(g, ry).values;
  std::vector<double> sel, avg;
  for (int s = 0; s < 500; ++s) {
    sc.seed = trial_seed(2024, 0, 0, static_cast<std::uint64_t>(s));
    const ComplexMatrix r = sample_covariance(simulate_snapshots(g, sc).y);
    sel.push_back((sample_selection(g, r).values - truth).squaredNorm());
    avg.push_back((sample_averaging(g, r).values - truth).squaredNorm());
  }
  std::sort(sel.begin(), sel.end());
  std::sort(avg.begin(), avg.end());
  CHECK(avg[250] < sel[250]);
}

TEST_CASE("augmented_matrix 2x2 layout") {
  CoarrayVector v{ComplexVector(3)};
  v.values << cdouble(1, -1), 5, cdouble(1, 1);  // lags -1, 0, 1
  const ComplexMatrix a = augmented_matrix(v);
  CHECK(a(0, 0) == cdouble(5, 0));
  CHECK(a(0, 1) == cdouble(1, -1));
  CHECK(a(1, 0) == cdouble(1, 1));
  CHECK(a(1, 1) == cdouble(5, 0));
}

TEST_CASE("augmented_matrix equals the block formula") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 20; ++t) {
    const int lp = 1 + t % 9;
    CoarrayVector v{coprime::testing::random_complex(rng, 2 * lp - 1, 1)};
    const ComplexMatrix a = augmented_matrix(v);
    CHECK(a == block_formula(v.values));
    CHECK(toeplitz_defect(a) == 0.0);
  }
}

TEST_CASE("augmented_matrix edge cases") {
  CoarrayVector zero{ComplexVector::Zero(7)};
  CHECK(augmented_matrix(zero) == ComplexMatrix::Zero(4, 4));
  CHECK_THROWS_AS(augmented_matrix(CoarrayVector{ComplexVector::Zero(4)}), DimensionError);

  const auto g = build_geometry(3, 5);
  const Scenario sc{coprime::testing::source_grid_thetas(), std::vector<double>(13, 2.0), 1.0, 1, 0};
  const ComplexMatrix rco = nominal_coarray_cov(g, sc);
  const ComplexMatrix ry = nominal_phys_cov(g, sc);
  CHECK((augmented_matrix(sample_averaging(g, ry)) - rco).norm() <= 1e-12 * rco.norm());
  CHECK((augmented_matrix(sample_selection(g, ry)) - rco).norm() <= 1e-12 * rco.norm());
}

TEST_CASE("averaging from Hermitian input yields a Hermitian augmented matrix") {
  std::mt19937_64 rng(31);
  const auto g = build_geometry(2, 5);
  const ComplexMatrix r = coprime::testing::random_hermitian(rng, g.num_elements());
  CHECK(hermitian_defect(augmented_matrix(sample_averaging(g, r))) <= 1e-12);
  CHECK_THROWS_AS(sample_averaging(g, ComplexMatrix::Identity(3, 3)), DimensionError);
}
