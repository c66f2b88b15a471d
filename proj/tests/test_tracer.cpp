#include <doctest.h>

#include <algorithm>
#include <random>

#include "roomray/mesh_gen.hpp"
#include "roomray/tracer.hpp"
#include "test_support.hpp"

using namespace roomray;
using roomray::testing::random_unit;

namespace {

Material table_107_concrete() {
  Material m;
  m.name = "concrete_block_coarse";
  m.absorption << 0.36, 0.36, 0.44, 0.31, 0.29, 0.39, 0.25, 0.25;
  return m;
}

}  // namespace

TEST_CASE("reflection examples and identities") {
  CHECK((reflect(Vec3(0, 0, -1), Vec3(0, 0, 1)) - Vec3(0, 0, 1)).norm() <
        1e-15);
  const double s = std::sqrt(2.0) / 2.0;
  CHECK((reflect(Vec3(s, 0, -s), Vec3(0, 0, 1)) - Vec3(s, 0, s)).norm() <
        1e-15);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 u = random_unit(rng);
    Vec3 n = random_unit(rng);
    if (n.dot(u) > 0) n = -n;
    const Vec3 r = reflect(u, n);
    CHECK(std::abs(r.norm() - 1.0) <= 1e-12);
    CHECK(std::abs(r.dot(n) + u.dot(n)) <= 1e-12);
    // tangential component is preserved
    CHECK(((r - r.dot(n) * n) - (u - u.dot(n) * n)).norm() <= 1e-12);
  }
}

TEST_CASE("one bounce applies the per-band wall absorption") {
  auto mesh = make_box_mesh(Vec3(2, 2, 2), table_107_concrete());
  const auto tree = build_tree(mesh);

  std::vector<Ray> rays(1);
  rays[0].origin = Vec3(1, 1, 1);
  rays[0].dir = Vec3(1, 0, 0);
  Receiver receiver{Vec3(1, 1, 1.5), 0.01};
  TraceConfig config;
  config.max_range = 100.0;

  step(rays, mesh, &tree, receiver, config);
  BandArray expected;
  expected << 0.64, 0.64, 0.56, 0.69, 0.71, 0.61, 0.75, 0.75;
  CHECK(((rays[0].band_multiplier - expected).abs() < 1e-12).all());
  CHECK(rays[0].path_length == doctest::Approx(1.0));
  CHECK(rays[0].face_history.size() == 1);
  CHECK((rays[0].dir - Vec3(-1, 0, 0)).norm() < 1e-15);
  CHECK(rays[0].alive);
}

TEST_CASE("ray aimed away from an open mesh is killed without capture") {
  TriangleMesh mesh;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  mesh.faces = {{0, 1, 2, 0}};
  mesh.materials = {roomray::testing::reflective_material()};
  const auto tree = build_tree(mesh);

  std::vector<Ray> rays(1);
  rays[0].origin = Vec3(0.2, 0.2, 1.0);
  rays[0].dir = Vec3(0, 0, 1);
  Receiver receiver{Vec3(50, 50, 50), 0.1};
  TraceConfig config;
  config.max_range = 100.0;
  const auto captures = step(rays, mesh, &tree, receiver, config);
  CHECK(captures.empty());
  CHECK_FALSE(rays[0].alive);
}

TEST_CASE("escaping ray can still be captured on the way out") {
  TriangleMesh mesh;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  mesh.faces = {{0, 1, 2, 0}};
  mesh.materials = {roomray::testing::reflective_material()};
  const auto tree = build_tree(mesh);

  std::vector<Ray> rays(1);
  rays[0].origin = Vec3(0.2, 0.2, 1.0);
  rays[0].dir = Vec3(0, 0, 1);
  Receiver receiver{Vec3(0.2, 0.2, 5.0), 0.25};
  TraceConfig config;
  config.max_range = 100.0;
  const auto captures = step(rays, mesh, &tree, receiver, config);
  REQUIRE(captures.size() == 1);
  CHECK(captures[0].path_length == doctest::Approx(3.75));
  CHECK_FALSE(rays[0].alive);
}

TEST_CASE("energy bookkeeping in a fully reflecting box") {
  const auto mesh =
      make_box_mesh(Vec3(3, 4, 5), roomray::testing::reflective_material());
  const auto tree = build_tree(mesh);
  SourceConfig source;
  source.position = Vec3(1.5, 2, 2.5);
  source.ray_count = 500;
  Receiver receiver{Vec3(1.0, 1.0, 1.0), 0.3};
  TraceConfig config;
  config.max_range = 40.0;

  auto rays = emit(source);
  for (int iteration = 0; iteration < 12; ++iteration) {
    step(rays, mesh, &tree, receiver, config);
    std::size_t live = 0, range_killed = 0;
    for (const Ray& ray : rays) {
      CHECK((ray.band_multiplier == 1.0).all());  // no decay when alpha = 0
      if (ray.alive) {
        ++live;
      } else {
        CHECK(ray.path_length > config.max_range);  // closed mesh: only range kills
        ++range_killed;
      }
    }
    CHECK(live + range_killed == rays.size());
  }
}

TEST_CASE("shoebox rays stay specular") {
  const auto mesh =
      make_box_mesh(Vec3(5, 4, 3), roomray::testing::reflective_material());
  const auto tree = build_tree(mesh);
  SourceConfig source;
  source.position = Vec3(4, 2, 1.7);
  source.ray_count = 200;
  Receiver receiver{Vec3(2, 2, 1.7), 0.2};
  TraceConfig config;
  config.max_range = 30.0;

  auto rays = emit(source);
  const auto initial = fibonacci_directions(source.ray_count);
  for (int iteration = 0; iteration < 10; ++iteration) {
    step(rays, mesh, &tree, receiver, config);
    for (std::size_t i = 0; i < rays.size(); ++i) {
      for (int axis = 0; axis < 3; ++axis) {
        CHECK(std::abs(std::abs(rays[i].dir[axis]) -
                       std::abs(initial[i][axis])) <= 1e-9);
      }
    }
  }
}

TEST_CASE("captures are monotone in path length and sorted") {
  const auto mesh =
      make_box_mesh(Vec3(5, 4, 3), roomray::testing::reflective_material());
  const auto tree = build_tree(mesh);
  SourceConfig source;
  source.position = Vec3(4, 2, 1.7);
  source.ray_count = 3000;
  Receiver receiver{Vec3(2, 2, 1.7), 0.2};
  TraceConfig config;

  const auto result = trace(mesh, tree, source, receiver, config);
  REQUIRE_FALSE(result.captures.empty());
  for (std::size_t i = 1; i < result.captures.size(); ++i) {
    const Capture& prev = result.captures[i - 1];
    const Capture& cur = result.captures[i];
    const bool ordered = prev.ray_index < cur.ray_index ||
                         (prev.ray_index == cur.ray_index &&
                          prev.path_length < cur.path_length);
    CHECK(ordered);
  }
  for (const Capture& cap : result.captures) {
    CHECK(std::abs((cap.point - receiver.center).norm() - receiver.radius) <=
          1e-9);
    CHECK(cap.path_length <= result.max_range);
  }
}

TEST_CASE("captures are independent of ray processing order") {
  const auto mesh =
      make_box_mesh(Vec3(5, 4, 3), roomray::testing::reflective_material());
  const auto tree = build_tree(mesh);
  Receiver receiver{Vec3(2, 2, 1.7), 0.2};
  TraceConfig config;
  config.max_range = 25.0;

  SourceConfig source;
  source.position = Vec3(4, 2, 1.7);
  source.ray_count = 400;

  auto forward = emit(source);
  auto reversed = emit(source);
  std::reverse(reversed.begin(), reversed.end());

  std::vector<Capture> caps_forward, caps_reversed;
  for (int iteration = 0; iteration < 8; ++iteration) {
    auto a = step(forward, mesh, &tree, receiver, config);
    auto b = step(reversed, mesh, &tree, receiver, config);
    caps_forward.insert(caps_forward.end(), a.begin(), a.end());
    caps_reversed.insert(caps_reversed.end(), b.begin(), b.end());
  }
  // map reversed indices back and compare as sets of (ray, path)
  const int n = source.ray_count;
  auto key = [](const Capture& c) {
    return std::pair<int, double>(c.ray_index, c.path_length);
  };
  std::vector<std::pair<int, double>> a, b;
  for (const auto& c : caps_forward) a.push_back(key(c));
  for (auto c : caps_reversed) {
    c.ray_index = n - 1 - c.ray_index;
    b.push_back(key(c));
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first == b[i].first);
    CHECK(a[i].second == doctest::Approx(b[i].second).epsilon(1e-12));
  }
}

TEST_CASE("multi-threaded step matches single-threaded") {
  const auto mesh =
      make_box_mesh(Vec3(5, 4, 3), roomray::testing::reflective_material());
  const auto tree = build_tree(mesh);
  Receiver receiver{Vec3(2, 2, 1.7), 0.2};
  SourceConfig source;
  source.position = Vec3(4, 2, 1.7);
  source.ray_count = 4096;

  TraceConfig single;
  single.max_range = 25.0;
  TraceConfig threaded = single;
  threaded.thread_count = 4;

  auto rays_a = emit(source);
  auto rays_b = emit(source);
  for (int iteration = 0; iteration < 5; ++iteration) {
    const auto a = step(rays_a, mesh, &tree, receiver, single);
    const auto b = step(rays_b, mesh, &tree, receiver, threaded);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].ray_index == b[i].ray_index);
      CHECK(a[i].path_length == b[i].path_length);
    }
  }
}

TEST_CASE("direct capture with the source inside the receiver uses the exit") {
  const auto mesh =
      make_box_mesh(Vec3(10, 10, 10), roomray::testing::reflective_material());
  const auto tree = build_tree(mesh);
  SourceConfig source;
  source.position = Vec3(5, 5, 5);
  source.ray_count = 16;
  Receiver receiver{Vec3(5, 5, 5), 0.5};
  TraceConfig config;
  config.max_iterations = 1;
  config.max_range = 100.0;

  const auto result = trace(mesh, tree, source, receiver, config);
  REQUIRE(result.captures.size() == 16);
  for (const Capture& cap : result.captures) {
    CHECK(cap.path_length == doctest::Approx(0.5));
    CHECK(cap.face_history.empty());
  }
}

TEST_CASE("free-space inverse square law at d = 18 m") {
  // 200 m absorbent box stands in for free space
  const auto mesh = make_box_mesh(Vec3(200, 200, 200),
                                  roomray::testing::absorbent_material());
  const auto tree = build_tree(mesh);
  SourceConfig source;
  source.position = Vec3(100, 100, 100);
  source.ray_count = 1000000;
  Receiver receiver{Vec3(118, 100, 100), 0.36};
  TraceConfig config;

  const auto result = trace(mesh, tree, source, receiver, config);
  CHECK(result.max_range == doctest::Approx(180.0));  // (r/2) sqrt(N)

  std::size_t direct = 0;
  for (const Capture& cap : result.captures) {
    if (cap.face_history.empty()) ++direct;
  }
  const double expected = 1e6 * 0.36 * 0.36 / (4.0 * 18.0 * 18.0);  // = 100
  CHECK(std::abs(static_cast<double>(direct) - expected) <=
        3.0 * std::sqrt(expected));
}

TEST_CASE("iteration cap flags truncation") {
  const auto mesh =
      make_box_mesh(Vec3(2, 2, 2), roomray::testing::reflective_material());
  const auto tree = build_tree(mesh);
  SourceConfig source;
  source.position = Vec3(1, 1, 1);
  source.ray_count = 8;
  Receiver receiver{Vec3(1, 1, 1), 0.1};
  TraceConfig config;
  config.max_iterations = 3;
  config.max_range = 1e6;

  const auto result = trace(mesh, tree, source, receiver, config);
  CHECK(result.truncated);
  CHECK(result.iterations == 3);
}
