#include "roomray/shoebox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roomray {

void ShoeBox::validate() const {
  if ((dimensions.array() <= 0.0).any()) {
    throw std::invalid_argument("box dimensions must be > 0");
  }
}

bool ShoeBox::inside(const Vec3& p) const {
  return (p.array() > 0.0).all() && (p.array() < dimensions.array()).all();
}

namespace {

// Unfolded coordinate of the source in lattice cell m along one axis.
double unfolded_coordinate(int m, double length, double source) {
  if (m % 2 == 0) return m * length + source;
  return (m + 1) * length - source;
}

// Wall crossings between cell 0 and cell m along one axis: the crossing
// sequence alternates walls starting at the upper wall for m > 0 and at the
// lower wall for m < 0.
void axis_wall_hits(int m, int& lower_hits, int& upper_hits) {
  const int crossings = std::abs(m);
  if (m > 0) {
    upper_hits = (crossings + 1) / 2;
    lower_hits = crossings / 2;
  } else {
    lower_hits = (crossings + 1) / 2;
    upper_hits = crossings / 2;
  }
}

}  // namespace

std::vector<OracleImageSource> enumerate_images(const ShoeBox& box,
                                                const Vec3& source,
                                                const Vec3& receiver,
                                                double max_distance,
                                                double receiver_radius,
                                                const AirModel& air) {
  box.validate();
  if (!box.inside(source) || !box.inside(receiver)) {
    throw std::invalid_argument(
        "source and receiver must be strictly inside the box");
  }
  if (max_distance <= 0.0 || receiver_radius <= 0.0) {
    throw std::invalid_argument("max_distance and receiver_radius must be > 0");
  }

  const BandArray beta = air_beta_bands(air);
  BandArray one_minus_alpha[6];
  for (int w = 0; w < 6; ++w) {
    one_minus_alpha[w] = 1.0 - box.walls[w].absorption;
  }

  std::vector<std::pair<std::array<int, 3>, OracleImageSource>> found;
  std::array<int, 3> span;
  for (int axis = 0; axis < 3; ++axis) {
    span[axis] =
        static_cast<int>(std::ceil(max_distance / box.dimensions[axis])) + 1;
  }

  for (int mx = -span[0]; mx <= span[0]; ++mx) {
    for (int my = -span[1]; my <= span[1]; ++my) {
      for (int mz = -span[2]; mz <= span[2]; ++mz) {
        const std::array<int, 3> cell{mx, my, mz};
        OracleImageSource image;
        for (int axis = 0; axis < 3; ++axis) {
          image.position[axis] = unfolded_coordinate(
              cell[axis], box.dimensions[axis], source[axis]);
          int lower = 0, upper = 0;
          axis_wall_hits(cell[axis], lower, upper);
          image.wall_hits[2 * axis] = lower;
          image.wall_hits[2 * axis + 1] = upper;
        }
        image.distance = (image.position - receiver).norm();
        if (image.distance > max_distance) continue;

        image.order = 0;
        for (int w = 0; w < 6; ++w) image.order += image.wall_hits[w];

        BandArray energy = BandArray::Constant(
            receiver_radius * receiver_radius /
            (4.0 * image.distance * image.distance));
        energy *= (-beta * image.distance).exp();
        for (int w = 0; w < 6; ++w) {
          for (int hit = 0; hit < image.wall_hits[w]; ++hit) {
            energy *= one_minus_alpha[w];
          }
        }
        image.band_energy = energy;
        found.emplace_back(cell, image);
      }
    }
  }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.second.distance != b.second.distance) {
      return a.second.distance < b.second.distance;
    }
    return a.first < b.first;
  });

  std::vector<OracleImageSource> images;
  images.reserve(found.size());
  for (auto& [cell, image] : found) images.push_back(std::move(image));
  return images;
}

bool MatchReport::energy_within(double tol_db, int max_order) const {
  for (const MatchedImage& m : matched) {
    if (m.order > max_order) continue;
    if ((m.energy_delta_db.abs() > tol_db).any()) return false;
  }
  return true;
}

MatchReport compare(const std::vector<OracleImageSource>& oracle,
                    const std::vector<ImageSource>& traced, double pos_tol,
                    double energy_tol_db) {
  MatchReport report;
  report.pos_tol = pos_tol;
  report.energy_tol_db = energy_tol_db;

  // traced index -> oracle index (or -1)
  std::vector<std::vector<int>> members(oracle.size());
  for (std::size_t t = 0; t < traced.size(); ++t) {
    int best = -1;
    double best_dist = pos_tol;
    for (std::size_t o = 0; o < oracle.size(); ++o) {
      const double dist = (traced[t].position - oracle[o].position).norm();
      if (dist <= best_dist) {
        best_dist = dist;
        best = static_cast<int>(o);
      }
    }
    if (best >= 0) {
      members[best].push_back(static_cast<int>(t));
    } else {
      report.unmatched_traced.push_back(static_cast<int>(t));
    }
  }

  BandArray sq_sum = BandArray::Zero();
  for (std::size_t o = 0; o < oracle.size(); ++o) {
    if (members[o].empty()) {
      report.unmatched_oracle.push_back(static_cast<int>(o));
      continue;
    }
    MatchedImage match;
    match.oracle_index = static_cast<int>(o);
    match.traced_indices = members[o];
    match.order = oracle[o].order;
    BandArray traced_energy = BandArray::Zero();
    for (int t : members[o]) {
      traced_energy += traced[t].band_energy;
      match.position_error =
          std::max(match.position_error,
                   (traced[t].position - oracle[o].position).norm());
    }
    match.energy_delta_db =
        10.0 * (traced_energy.max(1e-300) / oracle[o].band_energy.max(1e-300))
                   .log10();
    report.max_position_error =
        std::max(report.max_position_error, match.position_error);
    sq_sum += match.energy_delta_db.square();
    report.matched.push_back(std::move(match));
  }
  if (!report.matched.empty()) {
    report.rms_energy_error_db =
        (sq_sum / static_cast<double>(report.matched.size())).sqrt();
  }
  return report;
}

}  // namespace roomray
