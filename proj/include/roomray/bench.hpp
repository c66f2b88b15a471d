#ifndef ROOMRAY_BENCH_HPP
#define ROOMRAY_BENCH_HPP

#include <string>
#include <vector>

namespace roomray {

/// One benchmark size: N = M = 2^k rays and faces on the subdivided
/// tetrahedron fixture, timing a single tracer iteration.
struct BenchRow {
  int k = 0;
  std::size_t faces = 0;
  double build_seconds = 0.0;
  int tree_depth = 0;
  double tree_seconds = 0.0;
  double brute_seconds = -1.0;  // < 0 when skipped
};

/// Run the complexity benchmark. Brute force is measured only for
/// k <= brute_max_k (it is quadratic); pass -1 to skip it entirely.
std::vector<BenchRow> run_bench(const std::vector<int>& ks, int brute_max_k);

/// Per-iteration time of one tracer iteration with 2^log2_rays rays inside
/// the 2^log2_faces-face fixture. Brute-force cost is linear in the ray
/// count, so large-mesh brute times can be measured with fewer rays and
/// scaled (the full N = M = 2^17 sweep would run for minutes).
double time_fixture_iteration(int log2_faces, int log2_rays, bool with_tree);

/// Least-squares slope of log2(seconds) against k over the given rows,
/// restricted to k in [k_min, k_max]. Returns NaN with fewer than two points.
double loglog_slope(const std::vector<BenchRow>& rows, int k_min, int k_max,
                    bool brute);

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);
void write_bench_summary(const std::string& path,
                         const std::vector<BenchRow>& rows);

}  // namespace roomray

#endif  // ROOMRAY_BENCH_HPP
