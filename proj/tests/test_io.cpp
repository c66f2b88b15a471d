#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "roomray/pipeline.hpp"
#include "roomray/wav.hpp"

using namespace roomray;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const auto dir = fs::temp_directory_path() / "roomray_io_tests";
  fs::create_directories(dir);
  return dir;
}

std::string fixture(const std::string& name) {
  return (fs::path(ROOMRAY_FIXTURES_DIR) / name).string();
}

}  // namespace

TEST_CASE("wav float32 round trip") {
  const auto path = (temp_dir() / "probe.wav").string();
  std::vector<double> samples;
  for (int i = 0; i < 1000; ++i) samples.push_back(std::sin(0.01 * i) * 0.5);
  write_wav(path, samples, 44100.0);

  const auto loaded = read_wav(path);
  CHECK(loaded.sample_rate == 44100.0);
  REQUIRE(loaded.samples.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(loaded.samples[i] ==
          doctest::Approx(samples[i]).epsilon(1e-7));  // float32 precision
  }
}

TEST_CASE("reading a non-wav file fails cleanly") {
  const auto path = (temp_dir() / "not_a_wav.wav").string();
  std::ofstream(path) << "plain text";
  CHECK_THROWS(read_wav(path));
  CHECK_THROWS(read_wav((temp_dir() / "missing.wav").string()));
}

TEST_CASE("band trains csv round trip") {
  PulseTrains trains;
  for (int b = 0; b < kNumBands; ++b) trains[b].band = b;
  trains[0].events = {{0.001, 0.25}, {0.5, 0.125}};
  trains[7].events = {{0.333333333333333, 0.0625}};

  const auto path = (temp_dir() / "trains.csv").string();
  write_band_trains_csv(path, trains);
  const auto loaded = load_band_trains_csv(path);
  for (int b = 0; b < kNumBands; ++b) {
    REQUIRE(loaded[b].events.size() == trains[b].events.size());
    for (std::size_t i = 0; i < trains[b].events.size(); ++i) {
      CHECK(loaded[b].events[i].time_s == trains[b].events[i].time_s);
      CHECK(loaded[b].events[i].amplitude == trains[b].events[i].amplitude);
    }
  }
}

TEST_CASE("run config parses and validates") {
  const auto config = RunConfig::from_json_file(fixture("shoebox_run.json"));
  CHECK(config.source.ray_count == 100000);
  CHECK(config.receiver.radius == 0.2);
  CHECK(config.air.enabled);
  CHECK(config.merge_coplanar);
  CHECK_NOTHROW(config.validate());

  SUBCASE("zero rays names the field") {
    const auto bad = RunConfig::from_json_file(fixture("bad_run_zero_rays.json"));
    try {
      bad.validate();
      FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& err) {
      CHECK(std::string(err.what()).find("source.ray_count") !=
            std::string::npos);
    }
  }
  SUBCASE("missing mesh path names the field") {
    auto broken = config;
    broken.mesh_path = "no_such_file.obj";
    try {
      broken.validate();
      FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& err) {
      CHECK(std::string(err.what()).find("mesh") != std::string::npos);
    }
  }
  SUBCASE("low sample rate is rejected") {
    auto broken = config;
    broken.sample_rate = 16000.0;
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
  }
}

TEST_CASE("oracle config parses walls by name") {
  const auto config = OracleConfig::from_json_file(fixture("shoebox_box.json"));
  CHECK(config.box.dimensions == Vec3(5, 4, 3));
  CHECK(config.box.walls[0].name == "concrete_block_coarse");
  CHECK(config.box.walls[1].name == "hollow_wooden_podium");
  CHECK(config.ray_count == 100000);
  // tracer range plus one receiver radius, covering unfolded image distances
  CHECK(config.resolved_max_distance() ==
        doctest::Approx(0.1 * std::sqrt(100000.0) + 0.2));
}

TEST_CASE("image sources json round trips through the loader") {
  RunConfig config = RunConfig::from_json_file(fixture("shoebox_run_small.json"));
  config.source.ray_count = 4000;
  config.output_dir = (temp_dir() / "run_roundtrip").string();
  const auto artifacts = run_trace_pipeline(config);
  const auto files = write_run_artifacts(config, artifacts);
  REQUIRE_FALSE(files.empty());

  const auto loaded = load_image_sources_json(
      (fs::path(config.output_dir) / "image_sources.json").string());
  CHECK(loaded.ray_count == 4000);
  CHECK(loaded.receiver_radius == 0.2);
  REQUIRE(loaded.images.size() == artifacts.images.size());
  for (std::size_t i = 0; i < loaded.images.size(); ++i) {
    CHECK((loaded.images[i].position - artifacts.images[i].position).norm() ==
          0.0);
    CHECK(loaded.images[i].order == artifacts.images[i].order);
    CHECK(loaded.images[i].ray_count == artifacts.images[i].ray_count);
    CHECK((loaded.images[i].band_energy == artifacts.images[i].band_energy)
              .all());
  }

  SUBCASE("stage timings cover the pipeline total") {
    double sum = 0.0;
    for (const auto& stage : artifacts.timings) sum += stage.seconds;
    CHECK(std::abs(sum - artifacts.total_seconds) <=
          0.1 * artifacts.total_seconds + 1e-3);
  }

  SUBCASE("a failing write removes the partial outputs") {
    auto broken = config;
    broken.output_dir = (temp_dir() / "run_broken").string();
    fs::remove_all(broken.output_dir);
    // a directory squatting on the wav path makes that write fail
    fs::create_directories(fs::path(broken.output_dir) / "rir.wav");
    CHECK_THROWS(write_run_artifacts(broken, artifacts));
    CHECK_FALSE(fs::exists(fs::path(broken.output_dir) / "image_sources.json"));
    CHECK_FALSE(fs::exists(fs::path(broken.output_dir) / "image_sources.csv"));
    CHECK_FALSE(fs::exists(fs::path(broken.output_dir) / "metrics.json"));
  }
}
