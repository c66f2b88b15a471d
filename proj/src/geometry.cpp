#include "roomray/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace roomray {

Vec3 TriangleMesh::face_normal(int face) const {
  const Triangle& t = faces[face];
  const Vec3 e1 = vertices[t.b] - vertices[t.a];
  const Vec3 e2 = vertices[t.c] - vertices[t.a];
  return e1.cross(e2).normalized();
}

Vec3 TriangleMesh::face_centroid(int face) const {
  const Triangle& t = faces[face];
  return (vertices[t.a] + vertices[t.b] + vertices[t.c]) / 3.0;
}

double TriangleMesh::face_area(int face) const {
  const Triangle& t = faces[face];
  const Vec3 e1 = vertices[t.b] - vertices[t.a];
  const Vec3 e2 = vertices[t.c] - vertices[t.a];
  return 0.5 * e1.cross(e2).norm();
}

Aabb TriangleMesh::face_bounds(int face) const {
  const Triangle& t = faces[face];
  Aabb box;
  box.extend(vertices[t.a]);
  box.extend(vertices[t.b]);
  box.extend(vertices[t.c]);
  return box;
}

const Material& TriangleMesh::face_material(int face) const {
  return materials[faces[face].material_id];
}

Aabb TriangleMesh::bounds() const {
  Aabb box;
  for (const Vec3& v : vertices) box.extend(v);
  return box;
}

void TriangleMesh::validate() const {
  const int nv = static_cast<int>(vertices.size());
  const int nm = static_cast<int>(materials.size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Triangle& t = faces[i];
    if (t.a < 0 || t.a >= nv || t.b < 0 || t.b >= nv || t.c < 0 || t.c >= nv) {
      std::ostringstream msg;
      msg << "face " << i << " references a vertex out of range";
      throw std::invalid_argument(msg.str());
    }
    if (t.material_id < 0 || t.material_id >= nm) {
      std::ostringstream msg;
      msg << "face " << i << " references material " << t.material_id
          << " out of range";
      throw std::invalid_argument(msg.str());
    }
    if (face_area(static_cast<int>(i)) <= kDegenerateFaceArea) {
      std::ostringstream msg;
      msg << "face " << i << " is degenerate (area <= 1e-12 m^2)";
      throw std::invalid_argument(msg.str());
    }
  }
  for (const Material& m : materials) {
    if ((m.absorption < 0.0).any() || (m.absorption > 1.0).any()) {
      throw std::invalid_argument("material '" + m.name +
                                  "' has absorption outside [0,1]");
    }
  }
}

std::optional<Hit> intersect_triangle(const Vec3& origin, const Vec3& dir,
                                      const Triangle& tri,
                                      const TriangleMesh& mesh) {
  const Vec3& va = mesh.vertices[tri.a];
  const Vec3 edge1 = mesh.vertices[tri.b] - va;
  const Vec3 edge2 = mesh.vertices[tri.c] - va;

  const Vec3 pvec = dir.cross(edge2);
  const double det = edge1.dot(pvec);
  if (det == 0.0) return std::nullopt;  // ray parallel to the plane
  const double inv_det = 1.0 / det;

  const Vec3 tvec = origin - va;
  const double lambda = tvec.dot(pvec) * inv_det;
  if (lambda < 0.0 || lambda > 1.0) return std::nullopt;

  const Vec3 qvec = tvec.cross(edge1);
  const double mu = dir.dot(qvec) * inv_det;
  if (mu < 0.0 || lambda + mu > 1.0) return std::nullopt;

  const double delta = edge2.dot(qvec) * inv_det;
  if (delta <= kSelfHitEpsilon) return std::nullopt;

  Hit hit;
  hit.delta = delta;
  hit.point = origin + delta * dir;
  hit.lambda = lambda;
  hit.mu = mu;
  return hit;
}

std::optional<Hit> intersect_triangle(const Vec3& origin, const Vec3& dir,
                                      int face, const TriangleMesh& mesh) {
  auto hit = intersect_triangle(origin, dir, mesh.faces[face], mesh);
  if (hit) hit->face_index = face;
  return hit;
}

std::optional<double> intersect_sphere(const Vec3& origin, const Vec3& dir,
                                       const Vec3& center, double radius) {
  const Vec3 oc = origin - center;
  const double b = dir.dot(oc);
  const double c = oc.squaredNorm() - radius * radius;
  const double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  const double near = -b - sq;
  if (near > 0.0) return near;
  const double far = -b + sq;
  if (far > 0.0) return far;  // origin inside: exit point
  return std::nullopt;
}

}  // namespace roomray
