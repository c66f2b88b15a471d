#ifndef ROOMRAY_TYPES_HPP
#define ROOMRAY_TYPES_HPP

#include <array>

#include <Eigen/Dense>

namespace roomray {

using Vec3 = Eigen::Vector3d;

/// Number of octave bands carried through the whole pipeline.
inline constexpr int kNumBands = 8;

/// Per-band quantity (absorption, energy, attenuation), one entry per octave band.
using BandArray = Eigen::Array<double, kNumBands, 1>;

/// Octave band centers in Hz. Band edges are fc/sqrt(2) .. fc*sqrt(2), so
/// adjacent bands share an edge and the eight bands tile 44.2 Hz .. 11314 Hz.
inline constexpr std::array<double, kNumBands> kBandCentersHz = {
    62.5, 125.0, 250.0, 500.0, 1000.0, 2000.0, 4000.0, 8000.0};

inline BandArray band_centers_hz() {
  BandArray c;
  for (int b = 0; b < kNumBands; ++b) c[b] = kBandCentersHz[b];
  return c;
}

/// Minimum accepted ray parameter at an intersection, in meters. Keeps a
/// reflected ray from re-hitting its departure face.
inline constexpr double kSelfHitEpsilon = 1e-6;

}  // namespace roomray

#endif  // ROOMRAY_TYPES_HPP
