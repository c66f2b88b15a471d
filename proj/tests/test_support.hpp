#ifndef ROOMRAY_TEST_SUPPORT_HPP
#define ROOMRAY_TEST_SUPPORT_HPP

#include <random>

#include "roomray/geometry.hpp"

namespace roomray::testing {

inline Material reflective_material() {
  Material m;
  m.name = "fully_reflective";
  m.absorption = BandArray::Zero();
  return m;
}

inline Material absorbent_material() {
  Material m;
  m.name = "totally_absorbent";
  m.absorption = BandArray::Ones();
  return m;
}

inline Vec3 random_unit(std::mt19937& rng) {
  std::normal_distribution<double> normal;
  Vec3 v(normal(rng), normal(rng), normal(rng));
  while (v.norm() < 1e-6) v = Vec3(normal(rng), normal(rng), normal(rng));
  return v.normalized();
}

inline Vec3 random_in_box(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return Vec3(u(rng), u(rng), u(rng));
}

/// Random triangle soup: faces with centers in [0, extent]^3 and edges of
/// roughly the given size. Degenerate faces are regenerated.
inline TriangleMesh random_soup(std::mt19937& rng, int face_count,
                                double extent, double face_size) {
  TriangleMesh mesh;
  mesh.materials = {reflective_material()};
  std::uniform_real_distribution<double> center(0.0, extent);
  std::uniform_real_distribution<double> offset(-face_size, face_size);
  while (static_cast<int>(mesh.faces.size()) < face_count) {
    const Vec3 c(center(rng), center(rng), center(rng));
    const int base = static_cast<int>(mesh.vertices.size());
    for (int v = 0; v < 3; ++v) {
      mesh.vertices.push_back(
          c + Vec3(offset(rng), offset(rng), offset(rng)));
    }
    mesh.faces.push_back({base, base + 1, base + 2, 0});
    if (mesh.face_area(static_cast<int>(mesh.faces.size()) - 1) < 1e-9) {
      mesh.faces.pop_back();
      mesh.vertices.resize(base);
    }
  }
  return mesh;
}

}  // namespace roomray::testing

#endif  // ROOMRAY_TEST_SUPPORT_HPP
