#ifndef ROOMRAY_SHOEBOX_HPP
#define ROOMRAY_SHOEBOX_HPP

#include <array>

#include "roomray/air_absorption.hpp"
#include "roomray/geometry.hpp"
#include "roomray/image_sources.hpp"

namespace roomray {

/// Wall slots of a rectangular room, in fixed order.
enum BoxWall { kWallX0 = 0, kWallX1, kWallY0, kWallY1, kWallZ0, kWallZ1 };

/// Rectangular room [0,Lx] x [0,Ly] x [0,Lz] with one material per wall.
struct ShoeBox {
  Vec3 dimensions = Vec3(1.0, 1.0, 1.0);
  std::array<Material, 6> walls;

  void validate() const;
  bool inside(const Vec3& p) const;
};

/// Analytical image source of the rectangular-room mirror model.
struct OracleImageSource {
  Vec3 position = Vec3::Zero();
  double distance = 0.0;
  int order = 0;
  std::array<int, 6> wall_hits{};      // reflections per wall
  BandArray band_energy = BandArray::Zero();
};

/// Enumerate every mirror-lattice image within max_distance of the receiver.
/// Energy follows the traced convention with the statistical ray count
/// replaced by quadratic decay:
/// E(f) = (r^2 / (4 d^2)) * exp(-beta(f) d) * prod_w (1-alpha_w(f))^hits_w,
/// where r is the receiver radius of the run being validated. Output is
/// sorted by (distance, lattice index).
std::vector<OracleImageSource> enumerate_images(const ShoeBox& box,
                                                const Vec3& source,
                                                const Vec3& receiver,
                                                double max_distance,
                                                double receiver_radius,
                                                const AirModel& air);

/// One oracle image matched against the traced set. Beams split by coplanar
/// mesh faces are aggregated before the energy comparison.
struct MatchedImage {
  int oracle_index = -1;
  std::vector<int> traced_indices;
  double position_error = 0.0;
  int order = 0;
  BandArray energy_delta_db = BandArray::Zero();
};

struct MatchReport {
  std::vector<MatchedImage> matched;
  std::vector<int> unmatched_oracle;  // beams the tracer missed
  std::vector<int> unmatched_traced;  // should be empty
  double max_position_error = 0.0;
  BandArray rms_energy_error_db = BandArray::Zero();
  double pos_tol = 0.0;
  double energy_tol_db = 0.0;

  bool energy_within(double tol_db, int max_order) const;
};

/// Greedy nearest-neighbour match of traced images onto oracle positions.
MatchReport compare(const std::vector<OracleImageSource>& oracle,
                    const std::vector<ImageSource>& traced, double pos_tol,
                    double energy_tol_db);

}  // namespace roomray

#endif  // ROOMRAY_SHOEBOX_HPP
