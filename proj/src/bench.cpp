#include "roomray/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "roomray/mesh_gen.hpp"
#include "roomray/tracer.hpp"

namespace roomray {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Per-iteration time of step() on live rays bouncing inside the closed
// fixture. Iterations repeat until enough wall time has accumulated; the
// first (warm-up) iteration is discarded.
double time_iterations(std::vector<Ray>& rays, const TriangleMesh& mesh,
                       const AccelTree* tree, double min_elapsed,
                       int max_repeats) {
  Receiver receiver;  // far outside the fixture: no captures are recorded
  receiver.center = Vec3(1e6, 1e6, 1e6);
  receiver.radius = 1e-3;
  TraceConfig config;
  config.max_range = 1e30;  // rays never terminate by range

  step(rays, mesh, tree, receiver, config);  // warm-up

  double elapsed = 0.0;
  int repeats = 0;
  while (repeats < max_repeats && (repeats < 1 || elapsed < min_elapsed)) {
    const auto start = Clock::now();
    step(rays, mesh, tree, receiver, config);
    elapsed += seconds_since(start);
    ++repeats;
  }
  return elapsed / repeats;
}

Material bench_material() {
  Material reflective;
  reflective.name = "reflective";
  reflective.absorption = BandArray::Zero();
  return reflective;
}

}  // namespace

double time_fixture_iteration(int log2_faces, int log2_rays, bool with_tree) {
  const TriangleMesh mesh =
      make_subdivided_tetrahedron(log2_faces, bench_material());
  AccelTree tree;
  if (with_tree) tree = build_tree(mesh);

  SourceConfig source;
  source.position = Vec3::Zero();
  source.ray_count = 1 << log2_rays;
  auto rays = emit(source);
  return time_iterations(rays, mesh, with_tree ? &tree : nullptr, 0.25,
                         with_tree ? 50 : 5);
}

std::vector<BenchRow> run_bench(const std::vector<int>& ks, int brute_max_k) {
  const Material reflective = bench_material();

  std::vector<BenchRow> rows;
  for (int k : ks) {
    BenchRow row;
    row.k = k;

    const TriangleMesh mesh = make_subdivided_tetrahedron(k, reflective);
    row.faces = mesh.face_count();

    const auto build_start = Clock::now();
    const AccelTree tree = build_tree(mesh);
    row.build_seconds = seconds_since(build_start);
    row.tree_depth = tree.depth();

    SourceConfig source;
    source.position = Vec3::Zero();  // fixture center
    source.ray_count = 1 << k;

    {
      auto rays = emit(source);
      row.tree_seconds = time_iterations(rays, mesh, &tree, 0.25, 50);
    }
    if (brute_max_k >= 0 && k <= brute_max_k) {
      auto rays = emit(source);
      row.brute_seconds = time_iterations(rays, mesh, nullptr, 0.25, 5);
    }
    rows.push_back(row);
  }
  return rows;
}

double loglog_slope(const std::vector<BenchRow>& rows, int k_min, int k_max,
                    bool brute) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const BenchRow& row : rows) {
    if (row.k < k_min || row.k > k_max) continue;
    const double t = brute ? row.brute_seconds : row.tree_seconds;
    if (t <= 0.0) continue;
    const double x = row.k;
    const double y = std::log2(t);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_bench_csv(const std::string& path,
                     const std::vector<BenchRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "k,faces,build_s,tree_depth,tree_s,brute_s\n";
  out.precision(9);
  for (const BenchRow& row : rows) {
    out << row.k << ',' << row.faces << ',' << row.build_seconds << ','
        << row.tree_depth << ',' << row.tree_seconds << ',';
    if (row.brute_seconds >= 0.0) out << row.brute_seconds;
    out << '\n';
  }
}

void write_bench_summary(const std::string& path,
                         const std::vector<BenchRow>& rows) {
  nlohmann::ordered_json j;
  j["rows"] = rows.size();
  const double tree_slope = loglog_slope(rows, 12, 18, false);
  const double brute_slope = loglog_slope(rows, 10, 14, true);
  if (std::isnan(tree_slope)) {
    j["tree_loglog_slope_k12_18"] = nullptr;
  } else {
    j["tree_loglog_slope_k12_18"] = tree_slope;
  }
  if (std::isnan(brute_slope)) {
    j["brute_loglog_slope_k10_14"] = nullptr;
  } else {
    j["brute_loglog_slope_k10_14"] = brute_slope;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace roomray
