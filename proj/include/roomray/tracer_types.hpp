#ifndef ROOMRAY_TRACER_TYPES_HPP
#define ROOMRAY_TRACER_TYPES_HPP

#include <vector>

#include "roomray/types.hpp"

namespace roomray {

/// Energy-carrying ray state between iterations.
struct Ray {
  Vec3 origin = Vec3::Zero();
  Vec3 dir = Vec3::UnitZ();
  BandArray band_multiplier = BandArray::Ones();  // product of (1 - alpha) so far
  double path_length = 0.0;
  std::vector<int> face_history;
  bool alive = true;
};

/// Spherical measurement receiver.
struct Receiver {
  Vec3 center = Vec3::Zero();
  double radius = 0.1;
};

/// One pass of a ray through the receiver sphere.
struct Capture {
  int ray_index = -1;
  Vec3 point = Vec3::Zero();         // on the receiver sphere
  Vec3 incoming_dir = Vec3::UnitZ(); // segment direction at capture
  double path_length = 0.0;          // source-to-point along the folded path
  BandArray band_multiplier = BandArray::Ones();
  std::vector<int> face_history;
};

}  // namespace roomray

#endif  // ROOMRAY_TRACER_TYPES_HPP
