#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "coprime/array_model.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace coprime;

TEST_CASE("build_geometry enumerates the coprime locations") {
  SUBCASE("(2,3)") {
    const auto g = build_geometry(2, 3);
    CHECK(g.locations == std::vector<int>{0, 2, 3, 4, 6, 9});
    CHECK(g.num_elements() == 6);
    CHECK(g.coarray_size() == 8);
  }
  SUBCASE("(3,5)") {
    const auto g = build_geometry(3, 5);
    CHECK(g.num_elements() == 10);
    CHECK(g.coarray_size() == 18);
  }
  SUBCASE("(1,2)") {
    const auto g = build_geometry(1, 2);
    CHECK(g.locations == std::vector<int>{0, 1, 2});
    CHECK(g.coarray_size() == 3);
  }
}

TEST_CASE("build_geometry validates the pair") {
  CHECK_THROWS_AS(build_geometry(2, 4), ValidationError);
  CHECK_THROWS_AS(build_geometry(5, 3), ValidationError);
  CHECK_THROWS_AS(build_geometry(3, 3), ValidationError);
  CHECK_THROWS_AS(build_geometry(0, 3), ValidationError);
}

TEST_CASE("uniform coarray segment is hole-free and lag sets partition it") {
  for (int m = 1; m < 20; ++m) {
    for (int n = m + 1; m + n <= 20; ++n) {
      if (std::gcd(m, n) != 1) continue;
      CAPTURE(m);
      CAPTURE(n);
      const auto g = build_geometry(m, n);
      const int lp = g.coarray_size();
      const int count = g.num_elements();
      CHECK(count == 2 * m + n - 1);
      CHECK(std::set<int>(g.locations.begin(), g.locations.end()).size() == g.locations.size());

      int in_segment = 0;
      for (int d : g.difference_set) in_segment += (d > -lp && d < lp) ? 1 : 0;
      CHECK(in_segment == 2 * lp - 1);

      // Brute force: every flat index with an in-segment lag appears in
      // exactly one lag set, and nothing else does.
      std::vector<int> seen(static_cast<std::size_t>(count * count), 0);
      for (int lag = 1 - lp; lag <= lp - 1; ++lag) {
        for (int j : g.indices_for_lag(lag)) {
          seen[static_cast<std::size_t>(j)] += 1;
          CHECK(g.lag_of(j) == lag);
        }
      }
      for (int j = 0; j < count * count; ++j) {
        const int lag = g.lag_of(j);
        CHECK(seen[static_cast<std::size_t>(j)] == ((lag > -lp && lag < lp) ? 1 : 0));
      }
    }
  }
}

TEST_CASE("Kronecker steering entries carry the lag of their index") {
  const auto g = build_geometry(3, 5);
  const int lp = g.coarray_size();
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> angle(-89.9, 90.0);
  for (int t = 0; t < 10; ++t) {
    const double theta = angle(rng);
    const ComplexVector s = steering_vector(g, theta);
    // a = conj(s) kron s, so a[col * L + row] = conj(s[col]) * s[row].
    const int count = g.num_elements();
    ComplexVector a(count * count);
    for (int outer = 0; outer < count; ++outer)
      for (int inner = 0; inner < count; ++inner) a(outer * count + inner) = std::conj(s(outer)) * s(inner);
    const cdouble v = phase_base(theta);
    for (int lag = 1 - lp; lag <= lp - 1; ++lag) {
      for (int j : g.indices_for_lag(lag)) CHECK(std::abs(a(j) - std::pow(v, lag)) < 1e-12);
    }
  }
}

TEST_CASE("steering_vector") {
  const auto g = build_geometry(1, 2);
  const ComplexVector s0 = steering_vector(g, 0.0);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(s0(i) - cdouble(1, 0)) < 1e-15);
  const ComplexVector s90 = steering_vector(g, 90.0);
  CHECK(std::abs(s90(0) - cdouble(1, 0)) < 1e-12);
  CHECK(std::abs(s90(1) - cdouble(-1, 0)) < 1e-12);
  CHECK(std::abs(s90(2) - cdouble(1, 0)) < 1e-12);

  const auto g35 = build_geometry(3, 5);
  for (double theta : {-89.0, -30.0, 12.5, 77.0}) {
    CHECK((steering_vector(g35, theta).cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
  }
  CHECK_THROWS_AS(steering_vector(g, -90.0), ValidationError);
  CHECK_THROWS_AS(steering_vector(g, 90.5), ValidationError);
}

TEST_CASE("coarray_steering") {
  const auto g = build_geometry(2, 3);
  const ComplexVector a0 = coarray_steering(g, 0.0);
  CHECK(a0.size() == 8);
  CHECK((a0.array() - cdouble(1, 0)).abs().maxCoeff() < 1e-15);
  for (double theta : {-60.0, 10.0, 45.0}) CHECK(coarray_steering(g, theta)(0) == cdouble(1, 0));
  const ComplexVector a30 = coarray_steering(g, 30.0);
  for (int m = 0; m < 8; ++m) {
    CHECK(std::abs(a30(m) - std::polar(1.0, -std::numbers::pi * m / 2.0)) < 1e-12);
  }
}

TEST_CASE("nominal_phys_cov") {
  const auto g = build_geometry(2, 3);
  Scenario empty{{}, {}, 0.7, 10, 0};
  CHECK((nominal_phys_cov(g, empty) - 0.7 * ComplexMatrix::Identity(6, 6)).norm() < 1e-15);

  Scenario broadside{{0.0}, {1.0}, 0.0, 10, 0};
  CHECK((nominal_phys_cov(g, broadside) - ComplexMatrix::Ones(6, 6)).norm() < 1e-14);

  Scenario sc{{-20, 15, 40}, {1.0, 2.0, 0.5}, 0.3, 10, 0};
  const ComplexMatrix r = nominal_phys_cov(g, sc);
  CHECK(hermitian_defect(r) < 1e-14);
  CHECK(r.trace().real() == doctest::Approx(3.5 * 6 + 0.3 * 6));
  CHECK(herm_evd(r).values(5) > 0);
}

TEST_CASE("nominal_coarray_cov structure") {
  const auto g = build_geometry(3, 5);
  Scenario empty{{}, {}, 2.0, 10, 0};
  CHECK((nominal_coarray_cov(g, empty) - 2.0 * ComplexMatrix::Identity(18, 18)).norm() < 1e-15);

  Scenario sc{coprime::testing::source_grid_thetas(), std::vector<double>(13, 1.6), 1.0, 10, 0};
  const ComplexMatrix r = nominal_coarray_cov(g, sc);
  CHECK(toeplitz_defect(r) < 1e-12);
  CHECK(hermitian_defect(r) < 1e-14);
  const auto evd = herm_evd(r);
  for (int i = 13; i < 18; ++i) CHECK(evd.values(i) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(evd.values(12) > 1.0 + 1e-6);
}

TEST_CASE("scenario validation") {
  const auto g = build_geometry(2, 3);
  CHECK_THROWS_AS(validate(g, Scenario{{0.0}, {1.0, 1.0}, 1.0, 1, 0}), ValidationError);
  CHECK_THROWS_AS(validate(g, Scenario{{0.0}, {-1.0}, 1.0, 1, 0}), ValidationError);
  CHECK_THROWS_AS(validate(g, Scenario{{0.0}, {1.0}, -1.0, 1, 0}), ValidationError);
  CHECK_THROWS_AS(validate(g, Scenario{{-90.0}, {1.0}, 1.0, 1, 0}), ValidationError);
  // K must stay below L' = 8.
  std::vector<double> eight{-70, -50, -30, -10, 10, 30, 50, 70};
  CHECK_THROWS_AS(validate(g, Scenario{eight, std::vector<double>(8, 1.0), 1.0, 1, 0}), ValidationError);
  eight.pop_back();
  CHECK_NOTHROW(validate(g, Scenario{eight, std::vector<double>(7, 1.0), 1.0, 1, 0}));
}
