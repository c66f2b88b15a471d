#include "roomray/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "roomray/wav.hpp"

namespace roomray {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& out) : out_(out) {}

  void mark(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    out_.push_back({name, std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>& out_;
  std::chrono::steady_clock::time_point last_ =
      std::chrono::steady_clock::now();
};

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

ordered_json vec3_to_json(const Vec3& v) {
  return ordered_json::array({v.x(), v.y(), v.z()});
}

Vec3 vec3_from_json(const nlohmann::json& j) {
  return Vec3(j.at(0).get<double>(), j.at(1).get<double>(),
              j.at(2).get<double>());
}

ordered_json band_to_json(const BandArray& a) {
  ordered_json out = ordered_json::array();
  for (int b = 0; b < kNumBands; ++b) out.push_back(a[b]);
  return out;
}

ordered_json image_to_json(const ImageSource& image) {
  ordered_json j;
  j["position"] = vec3_to_json(image.position);
  j["distance_m"] = image.distance;
  j["order"] = image.order;
  j["ray_count"] = image.ray_count;
  j["band_energy"] = band_to_json(image.band_energy);
  j["face_path"] = image.face_path;
  if (image.projection) {
    j["projection"] = vec3_to_json(*image.projection);
  } else {
    j["projection"] = nullptr;
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_image_sources_csv(const std::string& path,
                             const std::vector<ImageSource>& images) {
  std::ostringstream out;
  out << "x,y,z,distance_m,order,ray_count";
  for (double c : kBandCentersHz) out << ",e" << c;
  out << ",proj_x,proj_y,proj_z\n";
  for (const ImageSource& image : images) {
    out << format_double(image.position.x()) << ','
        << format_double(image.position.y()) << ','
        << format_double(image.position.z()) << ','
        << format_double(image.distance) << ',' << image.order << ','
        << image.ray_count;
    for (int b = 0; b < kNumBands; ++b) {
      out << ',' << format_double(image.band_energy[b]);
    }
    if (image.projection) {
      out << ',' << format_double(image.projection->x()) << ','
          << format_double(image.projection->y()) << ','
          << format_double(image.projection->z());
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  write_text(path, out.str());
}

ordered_json metric_to_json(const MetricValue& m) {
  ordered_json j;
  j["value"] = m.value;
  j["reliable"] = m.reliable;
  return j;
}

ordered_json factors_to_json(const PerceptiveFactors& f) {
  ordered_json j;
  j["edt_s"] = metric_to_json(f.edt_s);
  j["t30_s"] = metric_to_json(f.t30_s);
  j["spl_db"] = metric_to_json(f.spl_db);
  j["c80_db"] = metric_to_json(f.c80_db);
  j["d50_pct"] = metric_to_json(f.d50_pct);
  j["ts_ms"] = metric_to_json(f.ts_ms);
  return j;
}

/// Removes already-written files when a later write fails.
class OutputSet {
 public:
  void note(const std::string& path) { written_.push_back(path); }
  const std::vector<std::string>& files() const { return written_; }
  void rollback() {
    for (const std::string& path : written_) {
      std::error_code ec;
      fs::remove(path, ec);
    }
  }

 private:
  std::vector<std::string> written_;
};

}  // namespace

RunArtifacts run_trace_pipeline(const RunConfig& config) {
  config.validate();
  RunArtifacts artifacts;
  StageClock clock(artifacts.timings);
  const auto start = std::chrono::steady_clock::now();

  const auto materials = load_material_table(config.material_path);
  artifacts.mesh = load_obj(config.mesh_path, materials, &artifacts.load_report);
  clock.mark("load");

  artifacts.tree = build_tree(artifacts.mesh);
  clock.mark("tree_build");
  artifacts.tree_build_seconds = artifacts.timings.back().seconds;

  TraceConfig trace_config;
  trace_config.max_iterations = config.max_iterations;
  trace_config.speed_of_sound = config.speed_of_sound;
  trace_config.max_range = config.max_range;
  trace_config.thread_count = config.deterministic ? 1 : config.thread_count;
  artifacts.trace = trace(artifacts.mesh, artifacts.tree, config.source,
                          config.receiver, trace_config);
  clock.mark("trace");

  ClusterOptions cluster_options;
  cluster_options.merge_coplanar = config.merge_coplanar;
  artifacts.images = build_image_sources(
      artifacts.trace.captures, config.source.ray_count, config.air,
      config.receiver.center, artifacts.mesh, artifacts.tree, cluster_options);
  clock.mark("image_sources");

  artifacts.trains = build_pulse_trains(artifacts.images, config.speed_of_sound);
  artifacts.rir = synthesize(artifacts.trains, config.sample_rate);
  clock.mark("rir");

  artifacts.metrics = factors(artifacts.trains);
  clock.mark("metrics");

  artifacts.total_seconds = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
  return artifacts;
}

namespace {

ordered_json run_config_to_json(const RunConfig& config) {
  ordered_json j;
  j["source"] = {{"position", vec3_to_json(config.source.position)},
                 {"ray_count", config.source.ray_count}};
  j["receiver"] = {{"center", vec3_to_json(config.receiver.center)},
                   {"radius", config.receiver.radius}};
  j["air"] = {{"enabled", config.air.enabled},
              {"temperature_c", config.air.temperature_c},
              {"relative_humidity", config.air.relative_humidity},
              {"pressure_kpa", config.air.pressure_kpa}};
  j["speed_of_sound"] = config.speed_of_sound;
  j["sample_rate"] = config.sample_rate;
  j["merge_coplanar"] = config.merge_coplanar;
  j["deterministic"] = config.deterministic;
  return j;
}

}  // namespace

std::vector<std::string> write_run_artifacts(const RunConfig& config,
                                             const RunArtifacts& artifacts) {
  fs::create_directories(config.output_dir);
  const auto out_path = [&config](const std::string& name) {
    return (fs::path(config.output_dir) / name).string();
  };

  OutputSet outputs;
  try {
    {
      ordered_json doc;
      doc["config"] = run_config_to_json(config);
      doc["max_range_m"] = artifacts.trace.max_range;
      ordered_json images = ordered_json::array();
      for (const ImageSource& image : artifacts.images) {
        images.push_back(image_to_json(image));
      }
      doc["images"] = std::move(images);
      const std::string path = out_path("image_sources.json");
      write_text(path, doc.dump(2) + "\n");
      outputs.note(path);
    }
    {
      const std::string path = out_path("image_sources.csv");
      write_image_sources_csv(path, artifacts.images);
      outputs.note(path);
    }
    {
      const std::string path = out_path("rir.wav");
      write_wav(path, artifacts.rir.samples, artifacts.rir.sample_rate);
      outputs.note(path);
    }
    {
      const std::string path = out_path("band_trains.csv");
      write_band_trains_csv(path, artifacts.trains);
      outputs.note(path);
    }
    {
      const std::string path = out_path("metrics.json");
      write_metrics_json(path, artifacts.metrics);
      outputs.note(path);
    }
    for (int b = 0; b < kNumBands; ++b) {
      if (artifacts.trains[b].events.empty()) continue;
      const auto curve = schroeder(artifacts.trains[b]);
      std::ostringstream csv;
      csv << "time_s,level_db\n";
      for (const DecayPoint& p : curve) {
        csv << format_double(p.time_s) << ',' << format_double(p.level_db)
            << '\n';
      }
      std::ostringstream name;
      name << "decay_" << kBandCentersHz[b] << ".csv";
      const std::string path = out_path(name.str());
      write_text(path, csv.str());
      outputs.note(path);
    }
    if (config.dump_captures) {
      std::ostringstream lines;
      for (const Capture& cap : artifacts.trace.captures) {
        ordered_json j;
        j["ray_index"] = cap.ray_index;
        j["point"] = vec3_to_json(cap.point);
        j["incoming_dir"] = vec3_to_json(cap.incoming_dir);
        j["path_length_m"] = cap.path_length;
        j["band_multiplier"] = band_to_json(cap.band_multiplier);
        j["face_history"] = cap.face_history;
        lines << j.dump() << '\n';
      }
      const std::string path = out_path("captures.jsonl");
      write_text(path, lines.str());
      outputs.note(path);
    }
    if (config.dump_tree_stats) {
      ordered_json j;
      j["node_count"] = artifacts.tree.node_count();
      j["leaf_count"] = artifacts.tree.leaf_count();
      j["depth"] = artifacts.tree.depth();
      j["build_seconds"] = artifacts.tree_build_seconds;
      const std::string path = out_path("tree_stats.json");
      write_text(path, j.dump(2) + "\n");
      outputs.note(path);
    }
    {
      ordered_json j;
      ordered_json timings;
      for (const StageTiming& t : artifacts.timings) {
        timings[t.name] = t.seconds;
      }
      timings["total"] = artifacts.total_seconds;
      j["timings_s"] = std::move(timings);
      j["mesh"] = {{"vertices", artifacts.mesh.vertices.size()},
                   {"faces", artifacts.mesh.face_count()},
                   {"degenerate_skipped", artifacts.load_report.degenerate_skipped}};
      j["tree"] = {{"node_count", artifacts.tree.node_count()},
                   {"depth", artifacts.tree.depth()},
                   {"build_seconds", artifacts.tree_build_seconds}};
      j["trace"] = {{"ray_count", config.source.ray_count},
                    {"iterations", artifacts.trace.iterations},
                    {"truncated", artifacts.trace.truncated},
                    {"escaped", artifacts.trace.escaped},
                    {"out_of_range", artifacts.trace.out_of_range},
                    {"captures", artifacts.trace.captures.size()},
                    {"max_range_m", artifacts.trace.max_range}};
      j["image_sources"] = {{"count", artifacts.images.size()}};
      j["air"] = {{"enabled", config.air.enabled},
                  {"alpha_db_per_m", band_to_json(air_alpha_bands_db_per_m(config.air))}};
      j["deterministic"] = config.deterministic;
      const std::string path = out_path("run_report.json");
      write_text(path, j.dump(2) + "\n");
      outputs.note(path);
    }
  } catch (...) {
    outputs.rollback();
    throw;
  }
  return outputs.files();
}

double OracleConfig::resolved_max_distance() const {
  if (max_distance > 0.0) return max_distance;
  // The tracer records captures up to path (r/2)*sqrt(N); the unfolded image
  // of such a capture can lie up to one receiver radius further out.
  return 0.5 * receiver.radius * std::sqrt(static_cast<double>(ray_count)) +
         receiver.radius;
}

OracleConfig OracleConfig::from_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config: " + path);
  const auto doc = nlohmann::json::parse(file);

  OracleConfig config;
  config.box.dimensions = vec3_from_json(doc.at("box").at("dimensions"));

  std::string material_path = doc.at("materials").get<std::string>();
  const auto base = fs::path(path).parent_path();
  if (fs::path(material_path).is_relative()) {
    material_path = (base / material_path).string();
  }
  const auto table = load_material_table(material_path);
  const auto& walls = doc.at("walls");
  const char* slots[6] = {"x0", "x1", "y0", "y1", "z0", "z1"};
  for (int w = 0; w < 6; ++w) {
    const std::string name = walls.at(slots[w]).get<std::string>();
    const auto found = table.find(name);
    if (found == table.end()) {
      throw UnresolvedMaterialError("material '" + name +
                                    "' not found in the material table");
    }
    config.box.walls[w] = found->second;
  }

  config.source_position = vec3_from_json(doc.at("source").at("position"));
  config.ray_count = doc.at("source").at("ray_count").get<int>();
  config.receiver.center = vec3_from_json(doc.at("receiver").at("center"));
  config.receiver.radius = doc.at("receiver").at("radius").get<double>();
  if (doc.contains("air")) {
    const auto& air = doc["air"];
    config.air.enabled = air.value("enabled", true);
    config.air.temperature_c = air.value("temperature_c", 20.0);
    config.air.relative_humidity = air.value("relative_humidity", 50.0);
    config.air.pressure_kpa = air.value("pressure_kpa", 101.325);
  }
  config.max_distance = doc.value("max_distance", 0.0);
  config.output_dir = doc.value("output_dir", std::string("oracle_out"));
  return config;
}

std::vector<OracleImageSource> run_oracle(const OracleConfig& config) {
  return enumerate_images(config.box, config.source_position,
                          config.receiver.center,
                          config.resolved_max_distance(),
                          config.receiver.radius, config.air);
}

std::vector<std::string> write_oracle_artifacts(
    const OracleConfig& config, const std::vector<OracleImageSource>& images) {
  fs::create_directories(config.output_dir);
  OutputSet outputs;
  try {
    ordered_json doc;
    doc["config"] = {
        {"box_dimensions", vec3_to_json(config.box.dimensions)},
        {"source", {{"position", vec3_to_json(config.source_position)},
                    {"ray_count", config.ray_count}}},
        {"receiver", {{"center", vec3_to_json(config.receiver.center)},
                      {"radius", config.receiver.radius}}},
        {"max_distance_m", config.resolved_max_distance()}};
    ordered_json list = ordered_json::array();
    for (const OracleImageSource& image : images) {
      ordered_json j;
      j["position"] = vec3_to_json(image.position);
      j["distance_m"] = image.distance;
      j["order"] = image.order;
      j["wall_hits"] = image.wall_hits;
      j["band_energy"] = band_to_json(image.band_energy);
      list.push_back(std::move(j));
    }
    doc["images"] = std::move(list);
    const std::string json_path =
        (fs::path(config.output_dir) / "oracle_image_sources.json").string();
    write_text(json_path, doc.dump(2) + "\n");
    outputs.note(json_path);

    std::ostringstream csv;
    csv << "x,y,z,distance_m,order";
    for (double c : kBandCentersHz) csv << ",e" << c;
    csv << '\n';
    for (const OracleImageSource& image : images) {
      csv << format_double(image.position.x()) << ','
          << format_double(image.position.y()) << ','
          << format_double(image.position.z()) << ','
          << format_double(image.distance) << ',' << image.order;
      for (int b = 0; b < kNumBands; ++b) {
        csv << ',' << format_double(image.band_energy[b]);
      }
      csv << '\n';
    }
    const std::string csv_path =
        (fs::path(config.output_dir) / "oracle_image_sources.csv").string();
    write_text(csv_path, csv.str());
    outputs.note(csv_path);
  } catch (...) {
    outputs.rollback();
    throw;
  }
  return outputs.files();
}

LoadedImageSources load_image_sources_json(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open: " + path);
  const auto doc = nlohmann::json::parse(file);

  LoadedImageSources loaded;
  const auto& config = doc.at("config");
  loaded.source_position = vec3_from_json(config.at("source").at("position"));
  loaded.ray_count = config.at("source").at("ray_count").get<int>();
  loaded.receiver_center = vec3_from_json(config.at("receiver").at("center"));
  loaded.receiver_radius = config.at("receiver").at("radius").get<double>();

  for (const auto& j : doc.at("images")) {
    ImageSource image;
    image.position = vec3_from_json(j.at("position"));
    image.distance = j.at("distance_m").get<double>();
    image.order = j.at("order").get<int>();
    image.ray_count = j.at("ray_count").get<int>();
    for (int b = 0; b < kNumBands; ++b) {
      image.band_energy[b] = j.at("band_energy").at(b).get<double>();
    }
    image.face_path = j.at("face_path").get<std::vector<int>>();
    if (!j.at("projection").is_null()) {
      image.projection = vec3_from_json(j.at("projection"));
    }
    loaded.images.push_back(std::move(image));
  }
  return loaded;
}

void check_comparable(const OracleConfig& oracle,
                      const LoadedImageSources& traced) {
  const double tol = 1e-12;
  if ((oracle.source_position - traced.source_position).norm() > tol) {
    throw std::invalid_argument(
        "config mismatch: traced set was computed with a different source position");
  }
  if ((oracle.receiver.center - traced.receiver_center).norm() > tol) {
    throw std::invalid_argument(
        "config mismatch: traced set was computed with a different receiver center");
  }
  if (std::abs(oracle.receiver.radius - traced.receiver_radius) > tol) {
    throw std::invalid_argument(
        "config mismatch: traced set was computed with a different receiver radius");
  }
  if (oracle.ray_count != traced.ray_count) {
    throw std::invalid_argument(
        "config mismatch: traced set was computed with a different ray count");
  }
}

std::string write_comparison_report(const std::string& path,
                                    const MatchReport& report) {
  ordered_json j;
  j["matched_count"] = report.matched.size();
  j["unmatched_oracle_count"] = report.unmatched_oracle.size();
  j["unmatched_traced_count"] = report.unmatched_traced.size();
  j["max_position_error_m"] = report.max_position_error;
  j["rms_energy_error_db"] = band_to_json(report.rms_energy_error_db);
  j["pos_tol_m"] = report.pos_tol;
  j["energy_tol_db"] = report.energy_tol_db;
  ordered_json matched = ordered_json::array();
  for (const MatchedImage& m : report.matched) {
    ordered_json entry;
    entry["oracle_index"] = m.oracle_index;
    entry["traced_indices"] = m.traced_indices;
    entry["order"] = m.order;
    entry["position_error_m"] = m.position_error;
    entry["energy_delta_db"] = band_to_json(m.energy_delta_db);
    matched.push_back(std::move(entry));
  }
  j["matched"] = std::move(matched);
  j["unmatched_oracle"] = report.unmatched_oracle;
  j["unmatched_traced"] = report.unmatched_traced;
  write_text(path, j.dump(2) + "\n");
  return path;
}

void write_band_trains_csv(const std::string& path, const PulseTrains& trains) {
  std::ostringstream out;
  out << "band,time_s,amplitude\n";
  for (const auto& train : trains) {
    for (const PulseEvent& e : train.events) {
      out << train.band << ',' << format_double(e.time_s) << ','
          << format_double(e.amplitude) << '\n';
    }
  }
  write_text(path, out.str());
}

PulseTrains load_band_trains_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  PulseTrains trains;
  for (int b = 0; b < kNumBands; ++b) trains[b].band = b;

  std::string line;
  std::getline(in, line);  // header
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string band_text, time_text, amp_text;
    if (!std::getline(ls, band_text, ',') ||
        !std::getline(ls, time_text, ',') || !std::getline(ls, amp_text)) {
      throw std::runtime_error("band_trains.csv line " +
                               std::to_string(line_no) + " is malformed");
    }
    const int band = std::stoi(band_text);
    if (band < 0 || band >= kNumBands) {
      throw std::runtime_error("band_trains.csv line " +
                               std::to_string(line_no) + ": bad band index");
    }
    trains[band].events.push_back({std::stod(time_text), std::stod(amp_text)});
  }
  return trains;
}

void write_metrics_json(const std::string& path, const BandFactors& factors) {
  ordered_json j;
  for (int b = 0; b < kNumBands; ++b) {
    std::ostringstream key;
    key << kBandCentersHz[b];
    j[key.str()] = factors_to_json(factors.bands[b]);
  }
  j["mid"] = factors_to_json(factors.mid);
  write_text(path, j.dump(2) + "\n");
}

}  // namespace roomray
