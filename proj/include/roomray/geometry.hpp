#ifndef ROOMRAY_GEOMETRY_HPP
#define ROOMRAY_GEOMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "roomray/types.hpp"

namespace roomray {

/// Surface material: one absorption coefficient per octave band, each in [0,1].
struct Material {
  std::string name;
  BandArray absorption = BandArray::Zero();
};

/// Triangular face referencing the mesh vertex table. Winding comes from the
/// input file; faces are treated as double-sided everywhere.
struct Triangle {
  int a = 0;
  int b = 0;
  int c = 0;
  int material_id = 0;
};

/// Axis-aligned bounding box.
struct Aabb {
  Vec3 min = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 max = Vec3::Constant(std::numeric_limits<double>::lowest());

  void extend(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  void extend(const Aabb& other) {
    min = min.cwiseMin(other.min);
    max = max.cwiseMax(other.max);
  }
  bool contains(const Aabb& other) const {
    return (other.min.array() >= min.array()).all() &&
           (other.max.array() <= max.array()).all();
  }
  Vec3 extent() const { return max - min; }
  double diagonal() const { return (max - min).norm(); }
};

/// Ray/face intersection record. `delta` is the ray parameter in meters,
/// `lambda`/`mu` the barycentric weights of vertices b and c.
struct Hit {
  double delta = 0.0;
  Vec3 point = Vec3::Zero();
  int face_index = -1;
  double lambda = 0.0;
  double mu = 0.0;
};

/// Immutable room geometry: vertex table, face table, material table.
/// All query functions are const and safe to call concurrently.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> faces;
  std::vector<Material> materials;

  std::size_t face_count() const { return faces.size(); }

  Vec3 face_normal(int face) const;
  Vec3 face_centroid(int face) const;
  double face_area(int face) const;
  Aabb face_bounds(int face) const;
  const Material& face_material(int face) const;
  Aabb bounds() const;

  /// Checks index ranges, material resolution and face degeneracy.
  /// Throws std::invalid_argument on the first violation.
  void validate() const;
};

/// Minimum triangle area accepted at load, in m^2.
inline constexpr double kDegenerateFaceArea = 1e-12;

/// Moller-Trumbore ray/triangle intersection. Double-sided, accepts hits with
/// delta > kSelfHitEpsilon and barycentric coordinates inside the triangle.
std::optional<Hit> intersect_triangle(const Vec3& origin, const Vec3& dir,
                                      const Triangle& tri,
                                      const TriangleMesh& mesh);

/// Same predicate addressed by face index.
std::optional<Hit> intersect_triangle(const Vec3& origin, const Vec3& dir,
                                      int face, const TriangleMesh& mesh);

/// Smallest delta > 0 where origin + delta*dir lies on the sphere. An origin
/// inside the sphere yields the exit point.
std::optional<double> intersect_sphere(const Vec3& origin, const Vec3& dir,
                                       const Vec3& center, double radius);

}  // namespace roomray

#endif  // ROOMRAY_GEOMETRY_HPP
