#ifndef ROOMRAY_EMISSION_HPP
#define ROOMRAY_EMISSION_HPP

#include <vector>

#include "roomray/tracer_types.hpp"
#include "roomray/types.hpp"

namespace roomray {

/// Omnidirectional point source. Rays carry a per-band attenuation multiplier
/// starting at 1; the 4*pi/N solid-angle weight is applied at measurement
/// (captured count / N), never stored per ray.
struct SourceConfig {
  Vec3 position = Vec3::Zero();
  int ray_count = 1;
  BandArray initial_energy = BandArray::Ones();

  void validate() const;
};

/// Deterministic Fibonacci lattice on the unit sphere. Point k gets
/// z = 1 - (2k+1)/n and azimuth 2*pi*k*(1 - 1/golden_ratio).
std::vector<Vec3> fibonacci_directions(int n);

/// One ray per lattice direction, all starting at the source position.
std::vector<Ray> emit(const SourceConfig& source);

}  // namespace roomray

#endif  // ROOMRAY_EMISSION_HPP
