#ifndef ROOMRAY_ACCEL_TREE_HPP
#define ROOMRAY_ACCEL_TREE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "roomray/geometry.hpp"

namespace roomray {

/// Node of the flattened median-split tree. Leaves hold exactly one face;
/// internal nodes hold two children. Boxes enclose the full face geometry of
/// the subtree, so sibling boxes may overlap.
struct TreeNode {
  Aabb box;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::int32_t face_index = -1;

  bool is_leaf() const { return face_index >= 0; }
};

/// Binary tree of axis-aligned boxes over mesh faces. Immutable after build;
/// queries are pure and safe from any number of threads.
struct AccelTree {
  std::vector<TreeNode> nodes;
  std::int32_t root = -1;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t leaf_count() const;
  /// Levels below the root (a single-leaf tree has depth 0).
  int depth() const;
};

/// Median spatial subdivision: split along the largest box extent at the
/// median face centroid, recurse until every leaf holds one face.
AccelTree build_tree(const TriangleMesh& mesh);

/// Slab test: does the forward half-line meet the closed box?
bool ray_box_test(const Vec3& origin, const Vec3& dir, const Aabb& box);

/// Entry distance of the forward half-line into the closed box
/// (0 for an origin inside), or nothing if the box is missed.
std::optional<double> ray_box_entry(const Vec3& origin, const Vec3& dir,
                                    const Aabb& box);

/// Nearest face hit via ordered tree traversal. Result is identical to
/// nearest_hit_brute, with delta ties broken by the lowest face index.
std::optional<Hit> nearest_hit(const AccelTree& tree, const TriangleMesh& mesh,
                               const Vec3& origin, const Vec3& dir);

/// Reference minimum-delta search over all faces.
std::optional<Hit> nearest_hit_brute(const TriangleMesh& mesh,
                                     const Vec3& origin, const Vec3& dir);

}  // namespace roomray

#endif  // ROOMRAY_ACCEL_TREE_HPP
