#include "roomray/mesh_gen.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace roomray {

TriangleMesh make_box_mesh(const Vec3& dimensions,
                           const std::array<Material, 6>& wall_materials) {
  if ((dimensions.array() <= 0.0).any()) {
    throw std::invalid_argument("box dimensions must be > 0");
  }
  const double lx = dimensions.x(), ly = dimensions.y(), lz = dimensions.z();
  TriangleMesh mesh;
  mesh.vertices = {
      {0, 0, 0}, {lx, 0, 0}, {lx, ly, 0}, {0, ly, 0},
      {0, 0, lz}, {lx, 0, lz}, {lx, ly, lz}, {0, ly, lz},
  };
  mesh.materials.assign(wall_materials.begin(), wall_materials.end());

  const auto quad = [&mesh](int a, int b, int c, int d, int material) {
    mesh.faces.push_back({a, b, c, material});
    mesh.faces.push_back({a, c, d, material});
  };
  quad(0, 4, 7, 3, 0);  // x = 0
  quad(1, 2, 6, 5, 1);  // x = lx
  quad(0, 1, 5, 4, 2);  // y = 0
  quad(3, 7, 6, 2, 3);  // y = ly
  quad(0, 3, 2, 1, 4);  // z = 0
  quad(4, 5, 6, 7, 5);  // z = lz
  return mesh;
}

TriangleMesh make_box_mesh(const Vec3& dimensions, const Material& material) {
  std::array<Material, 6> walls;
  walls.fill(material);
  return make_box_mesh(dimensions, walls);
}

namespace {

int midpoint_on_sphere(TriangleMesh& mesh, std::map<std::pair<int, int>, int>& cache,
                       int a, int b) {
  const std::pair<int, int> key = std::minmax(a, b);
  const auto found = cache.find(key);
  if (found != cache.end()) return found->second;
  const Vec3 mid = (mesh.vertices[a] + mesh.vertices[b]).normalized();
  mesh.vertices.push_back(mid);
  const int index = static_cast<int>(mesh.vertices.size()) - 1;
  cache.emplace(key, index);
  return index;
}

int midpoint_flat(TriangleMesh& mesh, std::map<std::pair<int, int>, int>& cache,
                  int a, int b) {
  const std::pair<int, int> key = std::minmax(a, b);
  const auto found = cache.find(key);
  if (found != cache.end()) return found->second;
  const Vec3 mid = 0.5 * (mesh.vertices[a] + mesh.vertices[b]);
  mesh.vertices.push_back(mid);
  const int index = static_cast<int>(mesh.vertices.size()) - 1;
  cache.emplace(key, index);
  return index;
}

template <typename Midpoint>
void subdivide_once(TriangleMesh& mesh, Midpoint midpoint) {
  std::map<std::pair<int, int>, int> cache;
  std::vector<Triangle> next;
  next.reserve(mesh.faces.size() * 4);
  for (const Triangle& t : mesh.faces) {
    const int ab = midpoint(mesh, cache, t.a, t.b);
    const int bc = midpoint(mesh, cache, t.b, t.c);
    const int ca = midpoint(mesh, cache, t.c, t.a);
    next.push_back({t.a, ab, ca, t.material_id});
    next.push_back({ab, t.b, bc, t.material_id});
    next.push_back({ca, bc, t.c, t.material_id});
    next.push_back({ab, bc, ca, t.material_id});
  }
  mesh.faces = std::move(next);
}

}  // namespace

TriangleMesh make_icosphere(int level, const Material& material) {
  if (level < 0) throw std::invalid_argument("subdivision level must be >= 0");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriangleMesh mesh;
  mesh.materials = {material};
  mesh.vertices = {
      {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1},
  };
  for (Vec3& v : mesh.vertices) v.normalize();
  const int faces[20][3] = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  for (const auto& f : faces) mesh.faces.push_back({f[0], f[1], f[2], 0});

  for (int l = 0; l < level; ++l) {
    subdivide_once(mesh, midpoint_on_sphere);
  }
  return mesh;
}

TriangleMesh make_subdivided_tetrahedron(int log2_faces,
                                         const Material& material) {
  if (log2_faces < 2) {
    throw std::invalid_argument("need log2_faces >= 2 (a tetrahedron has 4 faces)");
  }
  const double s = 1.0 / std::sqrt(3.0);
  TriangleMesh mesh;
  mesh.materials = {material};
  mesh.vertices = {
      {s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s},
  };
  mesh.faces = {
      {0, 1, 2, 0}, {0, 3, 1, 0}, {0, 2, 3, 0}, {1, 3, 2, 0},
  };

  // 4-way subdivision reaches 4^(q+1) faces, i.e. even exponents only; odd
  // exponents get one extra longest-edge bisection pass that doubles counts.
  const int levels = (log2_faces - 2) / 2;
  for (int l = 0; l < levels; ++l) {
    subdivide_once(mesh, midpoint_flat);
  }
  if (log2_faces % 2 == 1) {
    std::map<std::pair<int, int>, int> cache;
    std::vector<Triangle> next;
    next.reserve(mesh.faces.size() * 2);
    for (const Triangle& t : mesh.faces) {
      const double lab = (mesh.vertices[t.a] - mesh.vertices[t.b]).norm();
      const double lbc = (mesh.vertices[t.b] - mesh.vertices[t.c]).norm();
      const double lca = (mesh.vertices[t.c] - mesh.vertices[t.a]).norm();
      int u = t.a, v = t.b, w = t.c;  // split edge (u,v), apex w
      if (lbc >= lab && lbc >= lca) {
        u = t.b; v = t.c; w = t.a;
      } else if (lca >= lab && lca >= lbc) {
        u = t.c; v = t.a; w = t.b;
      }
      const int mid = midpoint_flat(mesh, cache, u, v);
      next.push_back({u, mid, w, t.material_id});
      next.push_back({mid, v, w, t.material_id});
    }
    mesh.faces = std::move(next);
  }
  return mesh;
}

}  // namespace roomray
