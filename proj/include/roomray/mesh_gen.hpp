#ifndef ROOMRAY_MESH_GEN_HPP
#define ROOMRAY_MESH_GEN_HPP

#include <array>

#include "roomray/geometry.hpp"

namespace roomray {

/// Rectangular room [0,Lx] x [0,Ly] x [0,Lz] as 12 triangles, one material
/// per wall in the order x0, x1, y0, y1, z0, z1.
TriangleMesh make_box_mesh(const Vec3& dimensions,
                           const std::array<Material, 6>& wall_materials);

/// Same box with a single material on every wall.
TriangleMesh make_box_mesh(const Vec3& dimensions, const Material& material);

/// Unit-radius sphere from icosahedron midpoint subdivision:
/// 20 * 4^level faces, vertices projected to the sphere.
TriangleMesh make_icosphere(int level, const Material& material);

/// Regular tetrahedron with unit circumradius, subdivided to exactly
/// 2^log2_faces faces (midpoint subdivision, plus one longest-edge bisection
/// pass for odd exponents). Used by the complexity benchmark.
TriangleMesh make_subdivided_tetrahedron(int log2_faces,
                                         const Material& material);

}  // namespace roomray

#endif  // ROOMRAY_MESH_GEN_HPP
