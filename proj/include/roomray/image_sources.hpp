#ifndef ROOMRAY_IMAGE_SOURCES_HPP
#define ROOMRAY_IMAGE_SOURCES_HPP

#include <optional>
#include <vector>

#include "roomray/accel_tree.hpp"
#include "roomray/air_absorption.hpp"
#include "roomray/tracer_types.hpp"

namespace roomray {

/// Virtual source reconstructed from one beam of captured rays.
struct ImageSource {
  Vec3 position = Vec3::Zero();      // absolute coordinates
  double distance = 0.0;             // |position - receiver center|
  BandArray band_energy = BandArray::Zero();
  BandArray band_multiplier = BandArray::Ones();  // wall product carried by the beam
  int ray_count = 0;
  int order = 0;                     // reflection count
  std::vector<int> face_path;
  std::optional<Vec3> projection;    // last-impact wall point, if any
};

struct ClusterOptions {
  /// Position tolerance as a fraction of the scene bounding-box diagonal.
  double tol_scale = 1e-6;
  /// Merge beams whose retro points and wall products coincide (coplanar
  /// faces of one wall produce identical mirrors under different face paths).
  bool merge_coplanar = false;
};

/// Unfold a capture back along its final direction: the virtual source sits
/// at hit point minus path length times incoming direction.
Vec3 retro_propagate(const Capture& capture);

/// Group captures into beams keyed by the exact face-index path, one image
/// source per beam, positions averaged over the beam's retro points. Groups
/// whose retro points spread beyond the tolerance are split. Output is sorted
/// by (order, distance-to-mean, face path) with positions pending
/// attach_energy for distances.
std::vector<ImageSource> cluster(const std::vector<Capture>& captures,
                                 double scene_diagonal,
                                 const ClusterOptions& options = {});

/// Fill in distance and per-band energy:
/// E(f) = (n/N) * exp(-beta(f) d) * prod_j (1 - alpha_j(f)).
void attach_energy(ImageSource& image, int total_rays, const AirModel& air,
                   const Vec3& receiver_center);

/// Project the image source onto the room: first mesh intersection of the
/// ray from the receiver toward the image. Direct sound projects nowhere.
std::optional<Vec3> project(const ImageSource& image, const TriangleMesh& mesh,
                            const AccelTree& tree, const Vec3& receiver_center);

/// cluster + attach_energy + project for a whole capture set, sorted by
/// (order, distance, face path).
std::vector<ImageSource> build_image_sources(
    const std::vector<Capture>& captures, int total_rays, const AirModel& air,
    const Vec3& receiver_center, const TriangleMesh& mesh,
    const AccelTree& tree, const ClusterOptions& options = {});

}  // namespace roomray

#endif  // ROOMRAY_IMAGE_SOURCES_HPP
