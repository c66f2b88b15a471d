#include "roomray/image_sources.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace roomray {

Vec3 retro_propagate(const Capture& capture) {
  return capture.point - capture.path_length * capture.incoming_dir;
}

namespace {

ImageSource make_image(const std::vector<const Capture*>& beam) {
  ImageSource image;
  Vec3 sum = Vec3::Zero();
  for (const Capture* cap : beam) sum += retro_propagate(*cap);
  image.position = sum / static_cast<double>(beam.size());
  image.ray_count = static_cast<int>(beam.size());
  image.face_path = beam.front()->face_history;
  image.order = static_cast<int>(image.face_path.size());
  image.band_multiplier = beam.front()->band_multiplier;
  return image;
}

// Split one face-path group into position clusters no wider than tol.
std::vector<ImageSource> split_group(std::vector<const Capture*>& group,
                                     double tol) {
  std::vector<std::pair<Vec3, const Capture*>> points;
  points.reserve(group.size());
  for (const Capture* cap : group) points.emplace_back(retro_propagate(*cap), cap);

  Vec3 mean = Vec3::Zero();
  for (const auto& [p, cap] : points) mean += p;
  mean /= static_cast<double>(points.size());
  double spread = 0.0;
  for (const auto& [p, cap] : points) spread = std::max(spread, (p - mean).norm());

  if (spread <= tol) {
    std::vector<const Capture*> beam;
    for (const auto& [p, cap] : points) beam.push_back(cap);
    return {make_image(beam)};
  }

  // Rare near-degenerate geometry: greedy chaining over lexicographic order.
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    if (a.first.x() != b.first.x()) return a.first.x() < b.first.x();
    if (a.first.y() != b.first.y()) return a.first.y() < b.first.y();
    return a.first.z() < b.first.z();
  });
  std::vector<ImageSource> images;
  std::vector<const Capture*> beam;
  Vec3 anchor = points.front().first;
  for (const auto& [p, cap] : points) {
    if (!beam.empty() && (p - anchor).norm() > tol) {
      images.push_back(make_image(beam));
      beam.clear();
    }
    if (beam.empty()) anchor = p;
    beam.push_back(cap);
  }
  if (!beam.empty()) images.push_back(make_image(beam));
  return images;
}

bool path_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void sort_images(std::vector<ImageSource>& images) {
  std::sort(images.begin(), images.end(),
            [](const ImageSource& a, const ImageSource& b) {
              if (a.order != b.order) return a.order < b.order;
              if (a.distance != b.distance) return a.distance < b.distance;
              return path_less(a.face_path, b.face_path);
            });
}

}  // namespace

std::vector<ImageSource> cluster(const std::vector<Capture>& captures,
                                 double scene_diagonal,
                                 const ClusterOptions& options) {
  const double tol = options.tol_scale * scene_diagonal;

  std::map<std::vector<int>, std::vector<const Capture*>> groups;
  for (const Capture& cap : captures) {
    groups[cap.face_history].push_back(&cap);
  }

  std::vector<ImageSource> images;
  for (auto& [path, group] : groups) {
    auto split = split_group(group, tol);
    images.insert(images.end(), std::make_move_iterator(split.begin()),
                  std::make_move_iterator(split.end()));
  }

  if (options.merge_coplanar) {
    // Beams reflected by coplanar faces of one wall unfold to the same mirror
    // with the same wall product; fold them into a single image source.
    std::vector<ImageSource> merged;
    std::vector<bool> used(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (used[i]) continue;
      ImageSource acc = images[i];
      Vec3 weighted = acc.position * acc.ray_count;
      for (std::size_t j = i + 1; j < images.size(); ++j) {
        if (used[j]) continue;
        const ImageSource& other = images[j];
        if (other.order != acc.order) continue;
        if ((other.position - images[i].position).norm() > tol) continue;
        if (((other.band_multiplier - acc.band_multiplier).abs() > 1e-12)
                .any()) {
          continue;
        }
        weighted += other.position * other.ray_count;
        acc.ray_count += other.ray_count;
        if (path_less(other.face_path, acc.face_path)) {
          acc.face_path = other.face_path;
        }
        used[j] = true;
      }
      acc.position = weighted / static_cast<double>(acc.ray_count);
      merged.push_back(std::move(acc));
    }
    images = std::move(merged);
  }

  sort_images(images);
  return images;
}

void attach_energy(ImageSource& image, int total_rays, const AirModel& air,
                   const Vec3& receiver_center) {
  image.distance = (image.position - receiver_center).norm();
  const BandArray beta = air_beta_bands(air);
  image.band_energy = (static_cast<double>(image.ray_count) / total_rays) *
                      (-beta * image.distance).exp() * image.band_multiplier;
}

std::optional<Vec3> project(const ImageSource& image, const TriangleMesh& mesh,
                            const AccelTree& tree,
                            const Vec3& receiver_center) {
  if (image.order < 1) return std::nullopt;
  const Vec3 toward = image.position - receiver_center;
  const double distance = toward.norm();
  if (distance == 0.0) return std::nullopt;
  const auto hit = nearest_hit(tree, mesh, receiver_center, toward / distance);
  if (!hit) return std::nullopt;
  return hit->point;
}

std::vector<ImageSource> build_image_sources(
    const std::vector<Capture>& captures, int total_rays, const AirModel& air,
    const Vec3& receiver_center, const TriangleMesh& mesh,
    const AccelTree& tree, const ClusterOptions& options) {
  auto images = cluster(captures, mesh.bounds().diagonal(), options);
  for (ImageSource& image : images) {
    attach_energy(image, total_rays, air, receiver_center);
    image.projection = project(image, mesh, tree, receiver_center);
  }
  std::sort(images.begin(), images.end(),
            [](const ImageSource& a, const ImageSource& b) {
              if (a.order != b.order) return a.order < b.order;
              if (a.distance != b.distance) return a.distance < b.distance;
              return path_less(a.face_path, b.face_path);
            });
  return images;
}

}  // namespace roomray
