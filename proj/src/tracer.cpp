#include "roomray/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace roomray {

double TraceConfig::resolved_max_range(const Receiver& receiver,
                                       int ray_count) const {
  if (max_range > 0.0) return max_range;
  // Range criterion at n = 1: d <= (r/2) * sqrt(N).
  return 0.5 * receiver.radius * std::sqrt(static_cast<double>(ray_count));
}

namespace {

void step_ray(Ray& ray, int ray_index, const TriangleMesh& mesh,
              const AccelTree* tree, const Receiver& receiver,
              double max_range, std::vector<Capture>& captures) {
  if (!ray.alive) return;

  const auto wall = tree ? nearest_hit(*tree, mesh, ray.origin, ray.dir)
                         : nearest_hit_brute(mesh, ray.origin, ray.dir);

  // Receiver pass on this segment. Entry distance; exit distance when the
  // segment starts inside the sphere. The receiver is transparent: a capture
  // neither kills nor attenuates the ray.
  const auto sphere_delta =
      intersect_sphere(ray.origin, ray.dir, receiver.center, receiver.radius);
  if (sphere_delta && (!wall || *sphere_delta < wall->delta)) {
    const double capture_length = ray.path_length + *sphere_delta;
    if (capture_length <= max_range) {
      Capture cap;
      cap.ray_index = ray_index;
      cap.point = ray.origin + *sphere_delta * ray.dir;
      cap.incoming_dir = ray.dir;
      cap.path_length = capture_length;
      cap.band_multiplier = ray.band_multiplier;
      cap.face_history = ray.face_history;
      captures.push_back(std::move(cap));
    }
  }

  if (!wall) {
    ray.alive = false;  // left the mesh
    return;
  }

  Vec3 normal = mesh.face_normal(wall->face_index);
  if (normal.dot(ray.dir) > 0.0) normal = -normal;  // double-sided faces

  ray.origin = wall->point;
  ray.dir = reflect(ray.dir, normal);
  ray.path_length += wall->delta;
  ray.band_multiplier *= (1.0 - mesh.face_material(wall->face_index)
                                    .absorption);
  ray.face_history.push_back(wall->face_index);

  if (ray.path_length > max_range) ray.alive = false;
}

}  // namespace

std::vector<Capture> step(std::span<Ray> rays, const TriangleMesh& mesh,
                          const AccelTree* tree, const Receiver& receiver,
                          const TraceConfig& config) {
  const double max_range =
      config.resolved_max_range(receiver, static_cast<int>(rays.size()));
  const int threads = std::max(1, config.thread_count);

  if (threads == 1 || rays.size() < 1024) {
    std::vector<Capture> captures;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      step_ray(rays[i], static_cast<int>(i), mesh, tree, receiver, max_range,
               captures);
    }
    return captures;
  }

  // Chunked workers with per-chunk capture buffers, concatenated in chunk
  // order so the result is independent of scheduling.
  const std::size_t chunk =
      (rays.size() + static_cast<std::size_t>(threads) - 1) / threads;
  std::vector<std::vector<Capture>> buffers(threads);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(rays.size(), begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        step_ray(rays[i], static_cast<int>(i), mesh, tree, receiver, max_range,
                 buffers[w]);
      }
    });
  }
  for (auto& t : pool) t.join();

  std::vector<Capture> captures;
  for (auto& buffer : buffers) {
    captures.insert(captures.end(), std::make_move_iterator(buffer.begin()),
                    std::make_move_iterator(buffer.end()));
  }
  return captures;
}

TraceResult trace(const TriangleMesh& mesh, const AccelTree& tree,
                  const SourceConfig& source, const Receiver& receiver,
                  const TraceConfig& config) {
  if (receiver.radius <= 0.0) {
    throw std::invalid_argument("receiver radius must be > 0");
  }
  source.validate();

  std::vector<Ray> rays = emit(source);
  TraceConfig resolved = config;
  resolved.max_range = config.resolved_max_range(receiver, source.ray_count);

  TraceResult result;
  result.max_range = resolved.max_range;

  std::size_t live = rays.size();
  while (live > 0 && result.iterations < config.max_iterations) {
    auto captures = step(rays, mesh, &tree, receiver, resolved);
    result.captures.insert(result.captures.end(),
                           std::make_move_iterator(captures.begin()),
                           std::make_move_iterator(captures.end()));
    ++result.iterations;
    live = 0;
    for (const Ray& ray : rays) live += ray.alive ? 1 : 0;
  }
  result.truncated = live > 0;

  for (const Ray& ray : rays) {
    if (!ray.alive && ray.path_length > resolved.max_range) {
      ++result.out_of_range;
    } else if (!ray.alive) {
      ++result.escaped;
    }
  }

  std::sort(result.captures.begin(), result.captures.end(),
            [](const Capture& a, const Capture& b) {
              if (a.ray_index != b.ray_index) return a.ray_index < b.ray_index;
              return a.path_length < b.path_length;
            });
  return result;
}

}  // namespace roomray
