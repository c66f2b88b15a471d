#include "roomray/run_config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace roomray {

namespace {

Vec3 parse_vec3(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument(field + " must be an array of 3 numbers");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  RunConfig config;

  config.mesh_path = doc.at("mesh").get<std::string>();
  config.material_path = doc.at("materials").get<std::string>();

  const auto& source = doc.at("source");
  config.source.position = parse_vec3(source.at("position"), "source.position");
  config.source.ray_count = source.at("ray_count").get<int>();

  const auto& receiver = doc.at("receiver");
  config.receiver.center = parse_vec3(receiver.at("center"), "receiver.center");
  config.receiver.radius = receiver.at("radius").get<double>();

  if (doc.contains("air")) {
    const auto& air = doc["air"];
    config.air.enabled = air.value("enabled", true);
    config.air.temperature_c = air.value("temperature_c", 20.0);
    config.air.relative_humidity = air.value("relative_humidity", 50.0);
    config.air.pressure_kpa = air.value("pressure_kpa", 101.325);
  }

  config.speed_of_sound = doc.value("speed_of_sound", 343.0);
  config.sample_rate = doc.value("sample_rate", 44100.0);
  config.max_range = doc.value("max_range", 0.0);
  config.max_iterations = doc.value("max_iterations", 1000);
  config.merge_coplanar = doc.value("merge_coplanar", true);
  config.deterministic = doc.value("deterministic", false);
  config.thread_count = doc.value("thread_count", 1);
  config.output_dir = doc.value("output_dir", std::string("out"));
  return config;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  auto config = from_json_text(buffer.str());

  // relative paths resolve against the config file location
  const auto base = std::filesystem::path(path).parent_path();
  const auto resolve = [&base](std::string& p) {
    if (!p.empty() && std::filesystem::path(p).is_relative()) {
      p = (base / p).string();
    }
  };
  resolve(config.mesh_path);
  resolve(config.material_path);
  return config;
}

void RunConfig::validate() const {
  if (!std::filesystem::exists(mesh_path)) {
    throw std::invalid_argument("mesh: file does not exist: " + mesh_path);
  }
  if (!std::filesystem::exists(material_path)) {
    throw std::invalid_argument("materials: file does not exist: " +
                                material_path);
  }
  if (source.ray_count < 1) {
    throw std::invalid_argument("source.ray_count: must be >= 1");
  }
  if (receiver.radius <= 0.0) {
    throw std::invalid_argument("receiver.radius: must be > 0");
  }
  if (speed_of_sound <= 0.0) {
    throw std::invalid_argument("speed_of_sound: must be > 0");
  }
  const double top_edge = kBandCentersHz[kNumBands - 1] * std::sqrt(2.0);
  if (sample_rate < 2.0 * top_edge) {
    throw std::invalid_argument("sample_rate: must be >= twice the top band edge (22628 Hz)");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("max_iterations: must be >= 1");
  }
  if (thread_count < 1) {
    throw std::invalid_argument("thread_count: must be >= 1");
  }
  try {
    air.validate();
  } catch (const std::invalid_argument& err) {
    throw std::invalid_argument(std::string("air: ") + err.what());
  }
}

}  // namespace roomray
