#ifndef ROOMRAY_PIPELINE_HPP
#define ROOMRAY_PIPELINE_HPP

#include <string>
#include <utility>
#include <vector>

#include "roomray/metrics.hpp"
#include "roomray/obj_loader.hpp"
#include "roomray/run_config.hpp"
#include "roomray/shoebox.hpp"

namespace roomray {

struct StageTiming {
  std::string name;
  double seconds = 0.0;
};

/// Everything a trace run produces, kept in memory so callers can inspect
/// results without re-reading the emitted files.
struct RunArtifacts {
  TriangleMesh mesh;
  AccelTree tree;
  LoadReport load_report;
  TraceResult trace;
  std::vector<ImageSource> images;
  PulseTrains trains;
  RoomImpulseResponse rir;
  BandFactors metrics;
  std::vector<StageTiming> timings;
  double total_seconds = 0.0;
  double tree_build_seconds = 0.0;
};

/// Load mesh + materials, trace, build image sources, synthesize the impulse
/// response and compute the perceptive factors.
RunArtifacts run_trace_pipeline(const RunConfig& config);

/// Emit image_sources.json/.csv, rir.wav, band_trains.csv, metrics.json,
/// decay_<band>.csv and run_report.json into config.output_dir. On failure
/// every file written so far is removed before the error propagates.
/// Returns the list of files written.
std::vector<std::string> write_run_artifacts(const RunConfig& config,
                                             const RunArtifacts& artifacts);

/// Analytical shoebox run configuration.
struct OracleConfig {
  ShoeBox box;
  Vec3 source_position = Vec3::Zero();
  int ray_count = 1;
  Receiver receiver;
  AirModel air;
  double max_distance = 0.0;  // 0 derives the tracer range (r/2)*sqrt(N)
  std::string output_dir = "oracle_out";

  static OracleConfig from_json_file(const std::string& path);
  double resolved_max_distance() const;
};

std::vector<OracleImageSource> run_oracle(const OracleConfig& config);

std::vector<std::string> write_oracle_artifacts(
    const OracleConfig& config, const std::vector<OracleImageSource>& images);

/// Traced image-source set re-loaded from image_sources.json together with
/// the run configuration embedded in the file.
struct LoadedImageSources {
  std::vector<ImageSource> images;
  Vec3 source_position = Vec3::Zero();
  int ray_count = 0;
  Vec3 receiver_center = Vec3::Zero();
  double receiver_radius = 0.0;
};

LoadedImageSources load_image_sources_json(const std::string& path);

/// Refuses (std::invalid_argument) when the traced set was produced under a
/// different source/receiver configuration than the oracle.
void check_comparable(const OracleConfig& oracle, const LoadedImageSources& traced);

std::string write_comparison_report(const std::string& path,
                                    const MatchReport& report);

/// Recompute perceptive factors from band_trains.csv.
PulseTrains load_band_trains_csv(const std::string& path);
void write_band_trains_csv(const std::string& path, const PulseTrains& trains);
void write_metrics_json(const std::string& path, const BandFactors& factors);

}  // namespace roomray

#endif  // ROOMRAY_PIPELINE_HPP
