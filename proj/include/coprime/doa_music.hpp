#ifndef COPRIME_DOA_MUSIC_HPP
#define COPRIME_DOA_MUSIC_HPP

#include <filesystem>
#include <vector>

#include "coprime/array_model.hpp"

namespace coprime {

struct SubspaceSplit {
  ComplexMatrix signal_basis;  ///< L' x K
  ComplexMatrix noise_basis;   ///< L' x (L' - K)
  RealVector eigenvalues;      ///< descending
};

/// Top-K eigenvectors of the Hermitian part span the signal subspace.
SubspaceSplit subspace_split(const ComplexMatrix& r, int signal_dim);

struct MusicResult {
  std::vector<double> grid_deg;
  std::vector<double> spectrum;
  std::vector<double> estimates_deg;  ///< ascending, K entries
  /// Fewer than K strict local maxima existed; the remainder was filled
  /// with the largest non-peak grid points.
  bool degraded = false;
};

/// Grid on (-90, 90]: 90 - k * step for k >= 0, returned ascending.
std::vector<double> music_grid(double step_deg);

/// Pseudospectrum 1 / ||Q_noise^H a_co(theta)||^2 on music_grid(step_deg),
/// with the K largest strict local maxima as estimates.
MusicResult music_spectrum(const SubspaceSplit& split, const CoprimeGeometry& geom, double step_deg = 0.05);

/// Squared errors (deg^2) after pairing both lists in ascending order.
std::vector<double> match_doas(std::vector<double> estimates, std::vector<double> truth);

/// CSV with header "angle_deg,pseudospectrum".
void write_spectrum_csv(const std::filesystem::path& path, const MusicResult& result);

}  // namespace coprime

#endif  // COPRIME_DOA_MUSIC_HPP
