#include "coprime/self_check.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "coprime/doa_music.hpp"
#include "coprime/estimators.hpp"
#include "coprime/snapshot_sim.hpp"

namespace coprime {

namespace {

ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  ComplexMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cdouble(g(rng), g(rng));
  return (a + a.adjoint()) * 0.5;
}

CheckResult check(const std::string& name, const std::function<std::string()>& body) {
  try {
    const std::string failure = body();
    return {name, failure.empty(), failure.empty() ? "ok" : failure};
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_self_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);

  out.push_back(check("evd reconstruction", [&]() -> std::string {
    for (int dim : {2, 8, 20, 32}) {
      const ComplexMatrix a = random_hermitian(rng, dim);
      const auto evd = herm_evd(a);
      const double err = (compose(evd.vectors, evd.values) - a).norm() / a.norm();
      if (err > 1e-10) return "relative error " + std::to_string(err) + " at D=" + std::to_string(dim);
    }
    return {};
  }));

  out.push_back(check("hole-free coarray segment", []() -> std::string {
    for (int m = 1; m < 20; ++m)
      for (int n = m + 1; m + n <= 20; ++n)
        if (std::gcd(m, n) == 1) build_geometry(m, n);
    return {};
  }));

  out.push_back(check("projection optimality", [&]() -> std::string {
    std::normal_distribution<double> g;
    for (int t = 0; t < 5; ++t) {
      const ComplexMatrix x = random_hermitian(rng, 12);
      const double toep = (x - nearest_toeplitz(x)).norm();
      const double psd = (x - nearest_psd(x)).norm();
      for (int c = 0; c < 20; ++c) {
        const ComplexMatrix other_t = nearest_toeplitz(x) + nearest_toeplitz(random_hermitian(rng, 12)) * 0.1;
        ComplexMatrix b = random_hermitian(rng, 12);
        const ComplexMatrix other_p = nearest_psd(x) + b * b.adjoint() * 0.01;
        if ((x - other_t).norm() < toep) return "Toeplitz competitor closer";
        if ((x - other_p).norm() < psd) return "PSD competitor closer";
      }
    }
    return {};
  }));

  out.push_back(check("nominal statistics coincide", []() -> std::string {
    const auto geom = build_geometry(2, 3);
    Scenario sc{{-43, -21, -10, 17, 29, 54}, std::vector<double>(6, 1.0), 1.0, 50, 0};
    const ComplexMatrix ry = nominal_phys_cov(geom, sc);
    const ComplexMatrix rco = nominal_coarray_cov(geom, sc);
    const double scale = rco.norm();
    const double errs[] = {
        (estimate_am(geom, ry, SamplingKind::Selection) - rco).norm() / scale,
        (estimate_am(geom, ry, SamplingKind::Averaging) - rco).norm() / scale,
        (estimate_psr(geom, ry) - rco).norm() / scale,
        (estimate_structured(geom, ry, StructuredConfig{6}).matrix - rco).norm() / scale,
    };
    for (double e : errs)
      if (e > 1e-8) return "relative error " + std::to_string(e);
    return {};
  }));

  out.push_back(check("norm chain monotone", [&]() -> std::string {
    const auto geom = build_geometry(2, 3);
    for (int trial = 0; trial < 10; ++trial) {
      Scenario sc{{-43, -21, -10, 17, 29, 54}, std::vector<double>(6, 1.0), 1.0, 50, rng()};
      const ComplexMatrix ry = sample_covariance(simulate_snapshots(geom, sc).y);
      const auto res = estimate_structured(geom, ry, StructuredConfig{6});
      const auto flat = res.flattened_trace();
      for (std::size_t i = 1; i < flat.size(); ++i) {
        if (flat[i] > flat[i - 1] * (1 + 1e-12)) return "increase at trace position " + std::to_string(i);
      }
    }
    return {};
  }));

  out.push_back(check("structured certificate", [&]() -> std::string {
    const auto geom = build_geometry(3, 5);
    std::vector<double> thetas;
    for (int k = 0; k < 13; ++k) thetas.push_back(-75.0 + 12.0 * k);
    Scenario sc{thetas, std::vector<double>(13, db_to_linear(-4)), 1.0, 150, rng()};
    const ComplexMatrix ry = sample_covariance(simulate_snapshots(geom, sc).y);
    const auto res = estimate_structured(geom, ry, StructuredConfig{13});
    if (!res.converged) return "did not converge";
    const auto cert = certify(res.matrix, 13);
    std::ostringstream msg;
    if (cert.hermitian_defect > 1e-8) msg << "hermitian " << cert.hermitian_defect << ' ';
    if (cert.min_eigenvalue < -1e-8) msg << "min eigenvalue " << cert.min_eigenvalue << ' ';
    if (cert.toeplitz_defect > 10 * res.eps_abs) msg << "toeplitz " << cert.toeplitz_defect << ' ';
    if (cert.noise_eigen_spread > 10 * res.eps_abs) msg << "noise spread " << cert.noise_eigen_spread;
    return msg.str();
  }));

  out.push_back(check("music recovers nominal DoAs", []() -> std::string {
    const auto geom = build_geometry(3, 5);
    std::vector<double> thetas;
    for (int k = 0; k < 13; ++k) thetas.push_back(-75.0 + 12.0 * k);
    Scenario sc{thetas, std::vector<double>(13, 1.0), 1.0, 1, 0};
    const auto music = music_spectrum(subspace_split(nominal_coarray_cov(geom, sc), 13), geom, 0.05);
    for (double e : match_doas(music.estimates_deg, thetas))
      if (std::sqrt(e) > 0.05 + 1e-9) return "error " + std::to_string(std::sqrt(e)) + " deg";
    return {};
  }));

  return out;
}

}  // namespace coprime
