#include "coprime/snapshot_sim.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace coprime {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t snr_index, std::uint64_t q_index,
                         std::uint64_t realization) {
  std::uint64_t h = mix_seed(master);
  h = mix_seed(h ^ snr_index);
  h = mix_seed(h ^ q_index);
  return mix_seed(h ^ realization);
}

SnapshotSet simulate_snapshots(const CoprimeGeometry& geom, const Scenario& scenario) {
  validate(geom, scenario);
  const ComplexMatrix s = steering_matrix(geom, scenario.thetas_deg);
  const int count = geom.num_elements();
  const int k = scenario.num_sources();
  ComplexGaussian gauss(scenario.seed);

  SnapshotSet out{ComplexMatrix(count, scenario.snapshots), scenario.seed};
  ComplexVector symbols(k);
  for (int q = 0; q < scenario.snapshots; ++q) {
    for (int src = 0; src < k; ++src) symbols(src) = gauss(scenario.powers[static_cast<std::size_t>(src)]);
    for (int i = 0; i < count; ++i) out.y(i, q) = gauss(scenario.noise_var);
    if (k > 0) out.y.col(q) += s * symbols;
  }
  return out;
}

ComplexMatrix sample_covariance(const ComplexMatrix& y) {
  if (y.cols() < 1 || y.rows() < 1) {
    throw DimensionError("sample_covariance: empty snapshot set");
  }
  ComplexMatrix r = ComplexMatrix::Zero(y.rows(), y.rows());
  r.selfadjointView<Eigen::Lower>().rankUpdate(y, 1.0 / static_cast<double>(y.cols()));
  r.triangularView<Eigen::StrictlyUpper>() = r.adjoint();
  return r;
}

namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(bytes.data(), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  std::array<char, sizeof(T)> bytes;
  if (!is.read(bytes.data(), sizeof(T))) throw std::runtime_error("snapshot file truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_snapshots(const std::filesystem::path& path, const SnapshotSet& set) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(set.y.rows()));
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(set.y.cols()));
  put_le<std::uint64_t>(os, set.seed);
  for (Eigen::Index q = 0; q < set.y.cols(); ++q) {
    for (Eigen::Index i = 0; i < set.y.rows(); ++i) {
      put_le<double>(os, set.y(i, q).real());
      put_le<double>(os, set.y(i, q).imag());
    }
  }
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

SnapshotSet read_snapshots(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  const auto rows = get_le<std::uint64_t>(is);
  const auto cols = get_le<std::uint64_t>(is);
  SnapshotSet set{ComplexMatrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)),
                  get_le<std::uint64_t>(is)};
  for (Eigen::Index q = 0; q < set.y.cols(); ++q) {
    for (Eigen::Index i = 0; i < set.y.rows(); ++i) {
      const double re = get_le<double>(is);
      const double im = get_le<double>(is);
      set.y(i, q) = cdouble(re, im);
    }
  }
  return set;
}

}  // namespace coprime
