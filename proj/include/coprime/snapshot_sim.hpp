#ifndef COPRIME_SNAPSHOT_SIM_HPP
#define COPRIME_SNAPSHOT_SIM_HPP

#include <cstdint>
#include <filesystem>
#include <random>

#include "coprime/array_model.hpp"

namespace coprime {

/// Snapshots y_1..y_Q as the columns of an L x Q matrix.
struct SnapshotSet {
  ComplexMatrix y;
  std::uint64_t seed = 0;

  int num_snapshots() const { return static_cast<int>(y.cols()); }
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed for one Monte Carlo trial, a hash of all four coordinates.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t snr_index, std::uint64_t q_index,
                         std::uint64_t realization);

/// Circularly-symmetric complex Gaussian sampler, CN(0, power):
/// sqrt(power / 2) * (g1 + i g2) with g1, g2 independent standard normals.
/// Engine is mt19937_64.
class ComplexGaussian {
public:
  explicit ComplexGaussian(std::uint64_t seed) : engine_(seed) {}

  cdouble operator()(double power) {
    const double g1 = normal_(engine_);
    const double g2 = normal_(engine_);
    return std::sqrt(power / 2.0) * cdouble(g1, g2);
  }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// y_q = sum_k s(theta_k) x_{q,k} + n_q, seeded from scenario.seed.
SnapshotSet simulate_snapshots(const CoprimeGeometry& geom, const Scenario& scenario);

/// (1/Q) sum_q y_q y_q^H.
ComplexMatrix sample_covariance(const ComplexMatrix& y);

/// Little-endian dump: u64 L, u64 Q, u64 seed, then for q = 1..Q and
/// i = 1..L the pair (re, im) of y_q[i] as IEEE-754 doubles.
void write_snapshots(const std::filesystem::path& path, const SnapshotSet& set);
SnapshotSet read_snapshots(const std::filesystem::path& path);

}  // namespace coprime

#endif  // COPRIME_SNAPSHOT_SIM_HPP
