#ifndef ROOMRAY_RUN_CONFIG_HPP
#define ROOMRAY_RUN_CONFIG_HPP

#include <string>

#include "roomray/air_absorption.hpp"
#include "roomray/emission.hpp"
#include "roomray/tracer.hpp"

namespace roomray {

/// Full description of one trace run. Parsed from a JSON document; CLI flags
/// override individual fields after parsing.
struct RunConfig {
  std::string mesh_path;
  std::string material_path;
  SourceConfig source;
  Receiver receiver;
  AirModel air;
  double speed_of_sound = 343.0;
  double sample_rate = 44100.0;
  double max_range = 0.0;  // 0 derives (r/2)*sqrt(N)
  int max_iterations = 1000;
  bool merge_coplanar = true;
  bool deterministic = false;
  int thread_count = 1;
  std::string output_dir = "out";
  bool dump_captures = false;
  bool dump_tree_stats = false;

  static RunConfig from_json_file(const std::string& path);
  static RunConfig from_json_text(const std::string& text);

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace roomray

#endif  // ROOMRAY_RUN_CONFIG_HPP
