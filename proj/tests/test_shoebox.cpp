#include <doctest.h>

#include <set>

#include "roomray/shoebox.hpp"
#include "test_support.hpp"

using namespace roomray;

namespace {

ShoeBox fixture_box() {
  ShoeBox box;
  box.dimensions = Vec3(5, 4, 3);
  for (int w = 0; w < 6; ++w) {
    box.walls[w] = roomray::testing::reflective_material();
  }
  return box;
}

}  // namespace

TEST_CASE("order-1 images are the six wall mirrors") {
  const auto images =
      enumerate_images(fixture_box(), Vec3(4, 2, 1.7), Vec3(2, 2, 1.7), 12.0,
                       0.2, AirModel::off());

  std::set<std::array<double, 3>> order1;
  for (const auto& image : images) {
    if (image.order == 1) {
      order1.insert({image.position.x(), image.position.y(),
                     image.position.z()});
    }
  }
  const std::set<std::array<double, 3>> expected = {
      {-4, 2, 1.7}, {6, 2, 1.7},  {4, -2, 1.7},
      {4, 6, 1.7},  {4, 2, -1.7}, {4, 2, 4.3},
  };
  CHECK(order1 == expected);
}

TEST_CASE("direct image is the source itself") {
  const auto images =
      enumerate_images(fixture_box(), Vec3(4, 2, 1.7), Vec3(2, 2, 1.7), 12.0,
                       0.2, AirModel::off());
  REQUIRE_FALSE(images.empty());
  // sorted by distance: the direct image comes first
  CHECK(images[0].order == 0);
  CHECK((images[0].position - Vec3(4, 2, 1.7)).norm() == 0.0);
  CHECK(images[0].distance == doctest::Approx(2.0));
}

TEST_CASE("image count grows with the cube of the range") {
  const auto box = fixture_box();
  const auto small = enumerate_images(box, Vec3(4, 2, 1.7), Vec3(2, 2, 1.7),
                                      20.0, 0.2, AirModel::off());
  const auto large = enumerate_images(box, Vec3(4, 2, 1.7), Vec3(2, 2, 1.7),
                                      40.0, 0.2, AirModel::off());
  const double ratio =
      static_cast<double>(large.size()) / static_cast<double>(small.size());
  CHECK(ratio >= 7.0);
  CHECK(ratio <= 9.0);
}

TEST_CASE("wall-hit counting on a hand-unfolded three-bounce image") {
  // Room [0,5] x [0,4] (z ignored by construction), source (4, 2, 1.5),
  // image in cell (mx, my) = (2, -1):
  //   x: cell 2, unfolded x = 2*5 + 4 = 14; path crosses x=5, x=10, i.e.
  //      the x1 wall once and the x0 wall once (walls alternate upper-first
  //      for positive cells);
  //   y: cell -1, unfolded y = 0*4 - 2 = -2; one crossing of y = 0 (y0).
  ShoeBox box = fixture_box();
  for (int w = 0; w < 6; ++w) {
    box.walls[w].absorption = BandArray::Constant(0.1 * (w + 1));
  }

  const auto images = enumerate_images(box, Vec3(4, 2, 1.5), Vec3(2, 2, 1.5),
                                       20.0, 0.2, AirModel::off());
  const OracleImageSource* found = nullptr;
  for (const auto& image : images) {
    if ((image.position - Vec3(14, -2, 1.5)).norm() < 1e-12) found = &image;
  }
  REQUIRE(found);
  CHECK(found->order == 3);
  CHECK(found->wall_hits[kWallX0] == 1);
  CHECK(found->wall_hits[kWallX1] == 1);
  CHECK(found->wall_hits[kWallY0] == 1);
  CHECK(found->wall_hits[kWallY1] == 0);
  CHECK(found->wall_hits[kWallZ0] == 0);
  CHECK(found->wall_hits[kWallZ1] == 0);

  // energy carries exactly one (1 - alpha) factor per counted wall
  const double d = found->distance;
  const double expected_750 =
      0.2 * 0.2 / (4.0 * d * d) * (1.0 - 0.1) * (1.0 - 0.2) * (1.0 - 0.3);
  CHECK(found->band_energy[0] == doctest::Approx(expected_750).epsilon(1e-12));
}

TEST_CASE("lossless box follows the pure inverse-square law") {
  const auto images =
      enumerate_images(fixture_box(), Vec3(4, 2, 1.7), Vec3(2, 2, 1.7), 30.0,
                       0.2, AirModel::off());
  for (const auto& image : images) {
    const double expected =
        0.2 * 0.2 / (4.0 * image.distance * image.distance);
    CHECK(((image.band_energy - expected).abs() < 1e-15).all());
  }
}

TEST_CASE("enumeration rejects outside points and bad arguments") {
  const auto box = fixture_box();
  CHECK_THROWS_AS(enumerate_images(box, Vec3(6, 2, 1.7), Vec3(2, 2, 1.7), 10.0,
                                   0.2, AirModel::off()),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_images(box, Vec3(4, 2, 1.7), Vec3(2, 4.5, 1.7),
                                   10.0, 0.2, AirModel::off()),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_images(box, Vec3(4, 2, 1.7), Vec3(2, 2, 1.7), -1.0,
                                   0.2, AirModel::off()),
                  std::invalid_argument);
}

TEST_CASE("enumeration is sorted and deterministic") {
  const auto a = enumerate_images(fixture_box(), Vec3(4, 2, 1.7),
                                  Vec3(2, 2, 1.7), 25.0, 0.2, AirModel::off());
  const auto b = enumerate_images(fixture_box(), Vec3(4, 2, 1.7),
                                  Vec3(2, 2, 1.7), 25.0, 0.2, AirModel::off());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].position == b[i].position);
    if (i > 0) CHECK(a[i - 1].distance <= a[i].distance);
  }
  // truncation independence: a longer range keeps the shared prefix set
  const auto c = enumerate_images(fixture_box(), Vec3(4, 2, 1.7),
                                  Vec3(2, 2, 1.7), 35.0, 0.2, AirModel::off());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].position == c[i].position);
  }
}

TEST_CASE("comparison matches, aggregates and reports misses") {
  const auto oracle =
      enumerate_images(fixture_box(), Vec3(4, 2, 1.7), Vec3(2, 2, 1.7), 10.0,
                       0.2, AirModel::off());

  std::vector<ImageSource> traced;
  for (std::size_t i = 0; i + 1 < oracle.size(); ++i) {  // drop the last one
    ImageSource image;
    image.position = oracle[i].position;
    image.order = oracle[i].order;
    image.band_energy = oracle[i].band_energy;
    image.ray_count = 10;
    traced.push_back(image);
  }
  // split the first oracle image into two half-energy beams
  traced[0].band_energy *= 0.5;
  ImageSource half = traced[0];
  traced.push_back(half);

  const auto report = compare(oracle, traced, 1e-9, 1.5);
  CHECK(report.matched.size() == oracle.size() - 1);
  CHECK(report.unmatched_oracle.size() == 1);
  CHECK(report.unmatched_traced.empty());
  CHECK(report.max_position_error <= 1e-12);
  CHECK(report.energy_within(0.01, 1000));  // halves add back exactly

  SUBCASE("foreign image is reported unmatched") {
    ImageSource stray;
    stray.position = Vec3(100, 100, 100);
    stray.band_energy = BandArray::Constant(1e-6);
    traced.push_back(stray);
    const auto bad = compare(oracle, traced, 1e-9, 1.5);
    CHECK(bad.unmatched_traced.size() == 1);
  }
  SUBCASE("energy deltas are visible") {
    traced[1].band_energy *= 2.0;  // +3 dB
    const auto off = compare(oracle, traced, 1e-9, 1.5);
    CHECK_FALSE(off.energy_within(1.5, 1000));
    CHECK(off.energy_within(3.2, 1000));
  }
}
