#include "roomray/accel_tree.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace roomray {

namespace {

struct Builder {
  const TriangleMesh& mesh;
  std::vector<int> order;       // face indices, permuted in place
  std::vector<Vec3> centroids;  // by face index
  std::vector<TreeNode>& nodes;

  std::int32_t build_range(int begin, int end) {
    TreeNode node;
    for (int i = begin; i < end; ++i) {
      node.box.extend(mesh.face_bounds(order[i]));
    }
    if (end - begin == 1) {
      node.face_index = order[begin];
      nodes.push_back(node);
      return static_cast<std::int32_t>(nodes.size()) - 1;
    }

    const Vec3 extent = node.box.extent();
    int axis = 0;
    extent.maxCoeff(&axis);

    const int mid = begin + (end - begin) / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid,
                     order.begin() + end, [&](int fa, int fb) {
                       const double ca = centroids[fa][axis];
                       const double cb = centroids[fb][axis];
                       if (ca != cb) return ca < cb;
                       return fa < fb;  // equal centroids: split by face index
                     });

    node.left = build_range(begin, mid);
    node.right = build_range(mid, end);
    nodes.push_back(node);
    return static_cast<std::int32_t>(nodes.size()) - 1;
  }
};

int depth_below(const AccelTree& tree, std::int32_t index) {
  const TreeNode& node = tree.nodes[index];
  if (node.is_leaf()) return 0;
  return 1 + std::max(depth_below(tree, node.left),
                      depth_below(tree, node.right));
}

}  // namespace

std::size_t AccelTree::leaf_count() const {
  std::size_t count = 0;
  for (const TreeNode& n : nodes) count += n.is_leaf() ? 1 : 0;
  return count;
}

int AccelTree::depth() const {
  if (root < 0) return 0;
  return depth_below(*this, root);
}

AccelTree build_tree(const TriangleMesh& mesh) {
  if (mesh.faces.empty()) {
    throw std::invalid_argument("cannot build a tree over an empty mesh");
  }
  AccelTree tree;
  tree.nodes.reserve(2 * mesh.faces.size() - 1);

  std::vector<int> order(mesh.faces.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Vec3> centroids(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    centroids[f] = mesh.face_centroid(static_cast<int>(f));
  }

  Builder builder{mesh, std::move(order), std::move(centroids), tree.nodes};
  tree.root = builder.build_range(0, static_cast<int>(mesh.faces.size()));
  return tree;
}

namespace {

// Tolerance against rays that graze a box exactly on an edge or corner,
// where one-ulp slab rounding would otherwise drop the whole subtree.
double graze_margin(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

}  // namespace

std::optional<double> ray_box_entry(const Vec3& origin, const Vec3& dir,
                                    const Aabb& box) {
  double t_near = 0.0;
  double t_far = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 3; ++axis) {
    if (dir[axis] == 0.0) {
      const double margin = graze_margin(origin[axis]);
      if (origin[axis] < box.min[axis] - margin ||
          origin[axis] > box.max[axis] + margin) {
        return std::nullopt;  // parallel to the slab and outside it
      }
      continue;
    }
    const double inv = 1.0 / dir[axis];
    double ta = (box.min[axis] - origin[axis]) * inv;
    double tb = (box.max[axis] - origin[axis]) * inv;
    if (ta > tb) std::swap(ta, tb);
    t_near = std::max(t_near, ta);
    t_far = std::min(t_far, tb);
  }
  if (t_near > t_far + graze_margin(t_far)) return std::nullopt;
  return t_near;
}

bool ray_box_test(const Vec3& origin, const Vec3& dir, const Aabb& box) {
  return ray_box_entry(origin, dir, box).has_value();
}

std::optional<Hit> nearest_hit(const AccelTree& tree, const TriangleMesh& mesh,
                               const Vec3& origin, const Vec3& dir) {
  if (tree.root < 0) return std::nullopt;

  std::optional<Hit> best;
  struct Entry {
    std::int32_t node;
    double t_entry;
  };
  std::array<Entry, 64> stack;
  int top = 0;

  const auto root_entry = ray_box_entry(origin, dir, tree.nodes[tree.root].box);
  if (!root_entry) return std::nullopt;
  stack[top++] = {tree.root, *root_entry};

  while (top > 0) {
    const Entry current = stack[--top];
    if (best && current.t_entry > best->delta + graze_margin(best->delta)) {
      continue;
    }

    const TreeNode& node = tree.nodes[current.node];
    if (node.is_leaf()) {
      const auto hit = intersect_triangle(origin, dir, node.face_index, mesh);
      if (hit && (!best || hit->delta < best->delta ||
                  (hit->delta == best->delta &&
                   hit->face_index < best->face_index))) {
        best = hit;
      }
      continue;
    }

    const auto left_entry = ray_box_entry(origin, dir, tree.nodes[node.left].box);
    const auto right_entry =
        ray_box_entry(origin, dir, tree.nodes[node.right].box);
    std::int32_t near = node.left, far = node.right;
    auto t_near = left_entry, t_far = right_entry;
    if (t_near && t_far && *t_far < *t_near) {
      std::swap(near, far);
      std::swap(t_near, t_far);
    } else if (!t_near) {
      std::swap(near, far);
      std::swap(t_near, t_far);
    }
    // push the far child first so the near one is processed next
    if (t_far &&
        (!best || *t_far <= best->delta + graze_margin(best->delta))) {
      stack[top++] = {far, *t_far};
    }
    if (t_near &&
        (!best || *t_near <= best->delta + graze_margin(best->delta))) {
      stack[top++] = {near, *t_near};
    }
  }
  return best;
}

std::optional<Hit> nearest_hit_brute(const TriangleMesh& mesh,
                                     const Vec3& origin, const Vec3& dir) {
  std::optional<Hit> best;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto hit = intersect_triangle(origin, dir, static_cast<int>(f), mesh);
    if (hit && (!best || hit->delta < best->delta)) best = hit;
  }
  return best;
}

}  // namespace roomray
