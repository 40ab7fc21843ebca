#include "coprime/doa_music.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>

namespace coprime {

SubspaceSplit subspace_split(const ComplexMatrix& r, int signal_dim) {
  require_square(r, "subspace_split");
  const auto dim = static_cast<int>(r.rows());
  if (signal_dim < 0 || signal_dim >= dim) {
    throw DimensionError("subspace_split: signal dimension " + std::to_string(signal_dim) +
                         " must be below " + std::to_string(dim));
  }
  auto evd = herm_evd(r);
  SubspaceSplit out;
  out.signal_basis = evd.vectors.leftCols(signal_dim);
  out.noise_basis = evd.vectors.rightCols(dim - signal_dim);
  out.eigenvalues = std::move(evd.values);
  return out;
}

std::vector<double> music_grid(double step_deg) {
  if (!(step_deg > 0)) throw ValidationError("MUSIC grid step must be positive");
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double theta = 90.0 - static_cast<double>(k) * step_deg;
    if (theta <= -90.0 + 1e-9 * step_deg) break;
    grid.push_back(theta);
  }
  std::reverse(grid.begin(), grid.end());
  return grid;
}

MusicResult music_spectrum(const SubspaceSplit& split, const CoprimeGeometry& geom, double step_deg) {
  const int lp = geom.coarray_size();
  if (split.noise_basis.rows() != lp) {
    throw DimensionError("music_spectrum: subspace dimension does not match the coarray");
  }
  const auto k = static_cast<std::size_t>(split.signal_basis.cols());
  MusicResult out;
  out.grid_deg = music_grid(step_deg);
  const std::size_t count = out.grid_deg.size();
  out.spectrum.resize(count);

  // Evaluate a block of steering vectors at a time.
  constexpr std::size_t block = 256;
  const ComplexMatrix noise_adj = split.noise_basis.adjoint();
  Eigen::MatrixXcd steer(lp, static_cast<Eigen::Index>(block));
  for (std::size_t start = 0; start < count; start += block) {
    const std::size_t len = std::min(block, count - start);
    for (std::size_t g = 0; g < len; ++g) {
      const double phase = -std::numbers::pi * std::sin(deg_to_rad(out.grid_deg[start + g]));
      for (int m = 0; m < lp; ++m) steer(m, static_cast<Eigen::Index>(g)) = std::polar(1.0, phase * m);
    }
    const Eigen::MatrixXcd proj = noise_adj * steer.leftCols(static_cast<Eigen::Index>(len));
    for (std::size_t g = 0; g < len; ++g) {
      out.spectrum[start + g] = 1.0 / proj.col(static_cast<Eigen::Index>(g)).squaredNorm();
    }
  }

  std::vector<std::size_t> peaks;
  for (std::size_t g = 1; g + 1 < count; ++g) {
    if (out.spectrum[g] > out.spectrum[g - 1] && out.spectrum[g] > out.spectrum[g + 1]) peaks.push_back(g);
  }
  auto by_value = [&](std::size_t a, std::size_t b) {
    return out.spectrum[a] != out.spectrum[b] ? out.spectrum[a] > out.spectrum[b] : a < b;
  };
  std::stable_sort(peaks.begin(), peaks.end(), by_value);
  if (peaks.size() > k) peaks.resize(k);

  if (peaks.size() < k) {
    out.degraded = true;
    std::vector<std::size_t> rest(count);
    std::iota(rest.begin(), rest.end(), std::size_t{0});
    std::stable_sort(rest.begin(), rest.end(), by_value);
    for (std::size_t g : rest) {
      if (peaks.size() == k) break;
      if (std::find(peaks.begin(), peaks.end(), g) == peaks.end()) peaks.push_back(g);
    }
  }
  for (std::size_t g : peaks) out.estimates_deg.push_back(out.grid_deg[g]);
  std::sort(out.estimates_deg.begin(), out.estimates_deg.end());
  return out;
}

std::vector<double> match_doas(std::vector<double> estimates, std::vector<double> truth) {
  if (estimates.size() != truth.size()) {
    throw DimensionError("match_doas: " + std::to_string(estimates.size()) + " estimates for " +
                         std::to_string(truth.size()) + " sources");
  }
  std::sort(estimates.begin(), estimates.end());
  std::sort(truth.begin(), truth.end());
  std::vector<double> errors(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double diff = estimates[i] - truth[i];
    errors[i] = diff * diff;
  }
  return errors;
}

void write_spectrum_csv(const std::filesystem::path& path, const MusicResult& result) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << "angle_deg,pseudospectrum\n";
  char line[96];
  for (std::size_t g = 0; g < result.grid_deg.size(); ++g) {
    std::snprintf(line, sizeof line, "%.6f,%.12e\n", result.grid_deg[g], result.spectrum[g]);
    os << line;
  }
}

}  // namespace coprime
