#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "roomray/bench.hpp"
#include "roomray/pipeline.hpp"
#include "roomray/wav.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int env_thread_count() {
  const char* value = std::getenv("ROOMRAY_THREADS");
  if (!value) return 1;
  const int threads = std::atoi(value);
  return threads >= 1 ? threads : 1;
}

int cmd_trace(const std::string& config_path, const std::string& output_dir,
              bool deterministic, bool dump_captures, bool tree_stats,
              int ray_count_override) {
  roomray::RunConfig config = roomray::RunConfig::from_json_file(config_path);
  if (!output_dir.empty()) config.output_dir = output_dir;
  if (deterministic) config.deterministic = true;
  if (ray_count_override > 0) config.source.ray_count = ray_count_override;
  config.dump_captures = dump_captures;
  config.dump_tree_stats = tree_stats;
  if (config.thread_count <= 1) config.thread_count = env_thread_count();
  config.validate();

  const auto artifacts = roomray::run_trace_pipeline(config);
  const auto files = roomray::write_run_artifacts(config, artifacts);
  std::cout << "traced " << config.source.ray_count << " rays, "
            << artifacts.trace.captures.size() << " captures, "
            << artifacts.images.size() << " image sources\n";
  for (const auto& file : files) std::cout << "wrote " << file << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& config_path, const std::string& output_dir,
               const std::string& compare_path, double pos_tol,
               double energy_tol_db) {
  roomray::OracleConfig config =
      roomray::OracleConfig::from_json_file(config_path);
  if (!output_dir.empty()) config.output_dir = output_dir;

  const auto images = roomray::run_oracle(config);
  const auto files = roomray::write_oracle_artifacts(config, images);
  std::cout << "enumerated " << images.size() << " oracle image sources\n";
  for (const auto& file : files) std::cout << "wrote " << file << "\n";

  if (!compare_path.empty()) {
    const auto traced = roomray::load_image_sources_json(compare_path);
    roomray::check_comparable(config, traced);
    const auto report =
        roomray::compare(images, traced.images, pos_tol, energy_tol_db);
    const auto report_path =
        (std::filesystem::path(config.output_dir) / "comparison_report.json")
            .string();
    roomray::write_comparison_report(report_path, report);
    std::cout << "matched " << report.matched.size() << " images, "
              << report.unmatched_traced.size() << " unmatched traced, "
              << "max position error " << report.max_position_error << " m\n";
    std::cout << "wrote " << report_path << "\n";
  }
  return kExitOk;
}

int cmd_bench(const std::vector<int>& k_list, int k_min, int k_max,
              int brute_max_k, const std::string& output_dir) {
  std::vector<int> ks = k_list;
  if (ks.empty() && k_min <= k_max) {
    for (int k = k_min; k <= k_max; ++k) ks.push_back(k);
  }

  const auto rows = roomray::run_bench(ks, brute_max_k);
  std::filesystem::create_directories(output_dir);
  const auto csv_path =
      (std::filesystem::path(output_dir) / "bench.csv").string();
  const auto summary_path =
      (std::filesystem::path(output_dir) / "bench_summary.json").string();
  roomray::write_bench_csv(csv_path, rows);
  roomray::write_bench_summary(summary_path, rows);

  for (const auto& row : rows) {
    std::cout << "k=" << row.k << " faces=" << row.faces
              << " tree=" << row.tree_seconds << "s";
    if (row.brute_seconds >= 0.0) {
      std::cout << " brute=" << row.brute_seconds << "s";
    }
    std::cout << "\n";
  }
  std::cout << "wrote " << csv_path << "\n";
  std::cout << "wrote " << summary_path << "\n";
  return kExitOk;
}

int cmd_metrics(const std::string& trains_path, const std::string& wav_path,
                const std::string& output_path) {
  if (!trains_path.empty()) {
    const auto trains = roomray::load_band_trains_csv(trains_path);
    const auto result = roomray::factors(trains);
    roomray::write_metrics_json(output_path, result);
  } else {
    const auto wav = roomray::read_wav(wav_path);
    const auto result = roomray::factors(wav.samples, wav.sample_rate);
    roomray::BandFactors bands;  // broadband only: report it as "mid"
    bands.mid = result;
    roomray::write_metrics_json(output_path, bands);
  }
  std::cout << "wrote " << output_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"roomray: geometric room acoustics by ray tracing"};
  app.require_subcommand(1);

  std::string config_path, output_dir, compare_path;
  bool deterministic = false, dump_captures = false, tree_stats = false;
  int ray_count_override = 0;
  double pos_tol = 1e-9, energy_tol_db = 1.5;
  int k_min = 10, k_max = 18, brute_max_k = 14;
  std::vector<int> k_list;
  std::string trains_path, wav_path, metrics_out = "metrics.json";

  auto* trace = app.add_subcommand("trace", "trace a room and emit all artifacts");
  trace->add_option("--config", config_path, "run configuration JSON")
      ->required();
  trace->add_option("--out", output_dir, "output directory (overrides config)");
  trace->add_flag("--deterministic", deterministic,
                  "single-threaded run with canonical output ordering");
  trace->add_flag("--dump-captures", dump_captures,
                  "also write captures.jsonl");
  trace->add_flag("--tree-stats", tree_stats, "also write tree_stats.json");
  trace->add_option("--rays", ray_count_override,
                    "override source.ray_count from the config");

  auto* oracle = app.add_subcommand(
      "oracle", "analytical shoebox image sources, optionally compared "
                "against a traced set");
  oracle->add_option("--config", config_path, "box configuration JSON")
      ->required();
  oracle->add_option("--out", output_dir, "output directory (overrides config)");
  oracle->add_option("--compare", compare_path,
                     "image_sources.json from a trace run");
  oracle->add_option("--pos-tol", pos_tol, "match radius in meters");
  oracle->add_option("--energy-tol-db", energy_tol_db,
                     "energy tolerance recorded in the report");

  auto* bench = app.add_subcommand("bench", "per-iteration complexity benchmark");
  bench->add_option("--k", k_list,
                    "explicit exponent list (N = M = 2^k); overrides the range");
  bench->add_option("--k-min", k_min, "smallest exponent of the range");
  bench->add_option("--k-max", k_max, "largest exponent of the range");
  bench->add_option("--brute-max-k", brute_max_k,
                    "largest exponent timed without the tree (-1 disables)");
  bench->add_option("--out", output_dir, "output directory")->required();

  auto* metrics = app.add_subcommand(
      "metrics", "recompute perceptive factors from band_trains.csv or rir.wav");
  metrics->add_option("--trains", trains_path, "band_trains.csv from a run");
  metrics->add_option("--wav", wav_path, "rir.wav from a run (broadband only)");
  metrics->add_option("--out", metrics_out, "output metrics JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (trace->parsed()) {
      return cmd_trace(config_path, output_dir, deterministic, dump_captures,
                       tree_stats, ray_count_override);
    }
    if (oracle->parsed()) {
      return cmd_oracle(config_path, output_dir, compare_path, pos_tol,
                        energy_tol_db);
    }
    if (bench->parsed()) {
      return cmd_bench(k_list, k_min, k_max, brute_max_k, output_dir);
    }
    if (metrics->parsed()) {
      if (trains_path.empty() && wav_path.empty()) {
        std::cerr << "error: metrics needs --trains or --wav\n";
        return kExitConfig;
      }
      return cmd_metrics(trains_path, wav_path, metrics_out);
    }
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
