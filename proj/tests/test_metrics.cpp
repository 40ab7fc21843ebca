#include <algorithm>
#include <cmath>

#include "coprime/metrics.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_helpers.hpp"

using namespace coprime;

namespace {

TrialReport report(double nse_value, double nsse_value = 0, std::vector<double> doa = {}) {
  TrialReport r;
  r.estimator = "x";
  r.nse = nse_value;
  r.nsse = nsse_value;
  r.doa_sq_errors = std::move(doa);
  return r;
}

}  // namespace

TEST_CASE("nse") {
  std::mt19937_64 rng(1);
  const ComplexMatrix r = coprime::testing::random_hermitian(rng, 6);
  CHECK(nse(r, r) == 0.0);
  CHECK(nse(2.0 * r, r) == doctest::Approx(1.0));
  CHECK(nse(ComplexMatrix::Zero(6, 6), r) == doctest::Approx(1.0));
  CHECK_THROWS_AS(nse(ComplexMatrix::Zero(5, 5), r), DimensionError);
}

TEST_CASE("nsse") {
  std::mt19937_64 rng(2);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr{Eigen::MatrixXcd(coprime::testing::random_complex(rng, 8, 8))};
  const ComplexMatrix q = Eigen::MatrixXcd(qr.householderQ());
  const ComplexMatrix basis = q.leftCols(3);
  CHECK(nsse(basis, basis) < 1e-28);

  Eigen::HouseholderQR<Eigen::MatrixXcd> small{Eigen::MatrixXcd(coprime::testing::random_complex(rng, 3, 3))};
  const ComplexMatrix unitary = Eigen::MatrixXcd(small.householderQ());
  CHECK(nsse(ComplexMatrix(basis * unitary), basis) < 1e-28);

  // Orthogonal subspaces: ||P1 - P2||^2 = 2K, so NSSE = 1.
  CHECK(nsse(ComplexMatrix(q.middleCols(3, 3)), basis) == doctest::Approx(1.0));

  CHECK_THROWS_AS(nsse(ComplexMatrix(2.0 * basis), basis), NumericalError);
  CHECK_THROWS_AS(nsse(ComplexMatrix(q.leftCols(2)), basis), DimensionError);
}

TEST_CASE("nsse stays in [0, 1] for random subspaces with K <= L'/2") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> a{Eigen::MatrixXcd(coprime::testing::random_complex(rng, 10, 4))};
    Eigen::HouseholderQR<Eigen::MatrixXcd> b{Eigen::MatrixXcd(coprime::testing::random_complex(rng, 10, 4))};
    const ComplexMatrix qa = Eigen::MatrixXcd(a.householderQ() * Eigen::MatrixXcd::Identity(10, 4));
    const ComplexMatrix qb = Eigen::MatrixXcd(b.householderQ() * Eigen::MatrixXcd::Identity(10, 4));
    const double v = nsse(qa, qb);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("aggregate examples") {
  CHECK(aggregate_cell({report(0.04)}, "x", 0, 10).rmnse == doctest::Approx(0.2));
  CHECK(aggregate_cell({report(0.0), report(0.08)}, "x", 0, 10).rmnse == doctest::Approx(0.2));
  const auto row = aggregate_cell({report(0, 0, {1, 1, 1}), report(0, 0, {1, 1, 1})}, "x", 2, 600);
  CHECK(row.rmse_deg == doctest::Approx(1.0));
  CHECK(row.n_trials == 2);
  CHECK(row.q == 600);
}

TEST_CASE("aggregate counts convergence and skips failures") {
  TrialReport slow = report(0.1, 0.2, {4});
  slow.converged = false;
  slow.iterations = 1000;
  TrialReport fast = report(0.1, 0.2, {4});
  fast.iterations = 10;
  TrialReport broken = report(50.0, 1.0, {});
  broken.failed = true;
  const auto row = aggregate_cell({slow, fast, broken}, "x", 0, 1);
  CHECK(row.n_trials == 2);
  CHECK(row.convergence_rate == doctest::Approx(0.5));
  CHECK(row.mean_iters == doctest::Approx(505.0));
  CHECK(row.rmnse == doctest::Approx(std::sqrt(0.1)));
  CHECK(row.rmse_deg == doctest::Approx(2.0));
  CHECK_THROWS(aggregate_cell({broken}, "x", 0, 1));
  CHECK_THROWS(aggregate_cell({}, "x", 0, 1));
}

TEST_CASE("aggregates are permutation-invariant and grow with a worse trial") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<TrialReport> reps;
  for (int i = 0; i < 30; ++i) reps.push_back(report(u(rng), u(rng), {u(rng), u(rng)}));
  const auto base = aggregate_cell(reps, "x", 0, 1);
  auto shuffled = reps;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto again = aggregate_cell(shuffled, "x", 0, 1);
  CHECK(again.rmnse == doctest::Approx(base.rmnse).epsilon(1e-14));
  CHECK(again.rmn_sse == doctest::Approx(base.rmn_sse).epsilon(1e-14));
  CHECK(again.rmse_deg == doctest::Approx(base.rmse_deg).epsilon(1e-14));

  reps.push_back(report(2.0, 0.99, {5.0, 5.0}));
  const auto worse = aggregate_cell(reps, "x", 0, 1);
  CHECK(worse.rmnse > base.rmnse);
  CHECK(worse.rmn_sse > base.rmn_sse);
  CHECK(worse.rmse_deg > base.rmse_deg);
}

TEST_CASE("sweep report serialization") {
  SweepReport rep;
  rep.rows.push_back(aggregate_cell({report(0.04, 0.01, {1.0})}, "structured", -4, 150));
  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("estimator,snr_db,q,rmnse,rmn_sse,rmse_deg,n_trials,convergence_rate,mean_iters", 0) == 0);
  CHECK(csv.find("\nstructured,-4.0000,150,") != std::string::npos);

  const auto j = nlohmann::json::parse(to_json(rep));
  CHECK(j["rows"].size() == 1);
  CHECK(j["rows"][0]["estimator"] == "structured");
  CHECK(j["rows"][0]["rmnse"].get<double>() == doctest::Approx(0.2));
  CHECK(rep.find("structured", -4, 150) != nullptr);
  CHECK(rep.find("structured", 2, 150) == nullptr);
}
