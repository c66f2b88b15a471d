#ifndef ROOMRAY_TRACER_HPP
#define ROOMRAY_TRACER_HPP

#include <span>

#include "roomray/accel_tree.hpp"
#include "roomray/emission.hpp"
#include "roomray/tracer_types.hpp"

namespace roomray {

/// Iteration limits and physical constants of a trace run.
struct TraceConfig {
  int max_iterations = 1000;       // safety cap; range is the primary terminator
  double speed_of_sound = 343.0;   // m/s
  double max_range = 0.0;          // <= 0: derive (r/2)*sqrt(N) at trace start
  int thread_count = 1;

  double resolved_max_range(const Receiver& receiver, int ray_count) const;
};

struct TraceResult {
  std::vector<Capture> captures;   // sorted by (ray index, path length)
  int iterations = 0;
  bool truncated = false;          // max_iterations reached with live rays
  std::size_t escaped = 0;         // rays that left the mesh
  std::size_t out_of_range = 0;    // rays terminated by the range criterion
  double max_range = 0.0;
};

/// Specular mirror bounce, u - 2(u.n)n. The caller orients n against the
/// incident direction (n.u < 0).
template <typename DU, typename DN>
Vec3 reflect(const Eigen::MatrixBase<DU>& incident,
             const Eigen::MatrixBase<DN>& normal) {
  return incident - 2.0 * incident.dot(normal) * normal;
}

/// Advance every live ray by one wall interaction: record a receiver pass on
/// the segment if any, then reflect and attenuate at the nearest face or kill
/// the ray (escape / range). Captures never alter the ray. A null tree selects
/// the brute-force nearest-face search.
std::vector<Capture> step(std::span<Ray> rays, const TriangleMesh& mesh,
                          const AccelTree* tree, const Receiver& receiver,
                          const TraceConfig& config);

/// Full propagation loop from a point source until all rays are dead or the
/// iteration cap is reached. Iteration 0 covers the direct segment, so the
/// direct sound is captured before any reflection.
TraceResult trace(const TriangleMesh& mesh, const AccelTree& tree,
                  const SourceConfig& source, const Receiver& receiver,
                  const TraceConfig& config);

}  // namespace roomray

#endif  // ROOMRAY_TRACER_HPP
