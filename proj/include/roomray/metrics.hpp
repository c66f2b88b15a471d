#ifndef ROOMRAY_METRICS_HPP
#define ROOMRAY_METRICS_HPP

#include <array>
#include <vector>

#include "roomray/rir.hpp"

namespace roomray {

struct DecayPoint {
  double time_s = 0.0;
  double level_db = 0.0;
};

/// Backward-integrated decay curve:
/// L(t) = 10 log10( integral_t^inf p^2 / integral_0^inf p^2 ),
/// monotone non-increasing. Throws on an all-zero signal.
std::vector<DecayPoint> schroeder(const std::vector<double>& samples,
                                  double sample_rate);

/// Decay curve of a discrete pulse train, evaluated at event times.
std::vector<DecayPoint> schroeder(const BandPulseTrain& train);

/// Metric value plus a flag; a metric is unreliable when the decay curve
/// cannot support it (e.g. the curve never reaches -35 dB for T30).
struct MetricValue {
  double value = 0.0;
  bool reliable = false;
};

/// Standard room-acoustic perceptive factors. Time windows are measured from
/// the direct-sound arrival t0.
struct PerceptiveFactors {
  MetricValue edt_s;    // -60 / slope of the [0, -10] dB decay segment
  MetricValue t30_s;    // -60 / slope of the [-5, -35] dB decay segment
  MetricValue spl_db;   // 10 log10 of total energy re E0 = 1
  MetricValue c80_db;   // early/late energy ratio at 80 ms, clamped at +-99 dB
  MetricValue d50_pct;  // early energy fraction at 50 ms
  MetricValue ts_ms;    // energy centroid time
};

/// Factors from a discrete pulse train; energy integrals are exact sums over
/// events, so SPL equals 10 log10(sum of image-source band energies).
PerceptiveFactors factors(const BandPulseTrain& train);

/// Factors from a sampled signal. The arrival t0 is the first sample whose
/// magnitude exceeds 1e-6 of the peak.
PerceptiveFactors factors(const std::vector<double>& samples,
                          double sample_rate);

/// Per-band factors plus the 500-1000 Hz average reported as "mid".
struct BandFactors {
  std::array<PerceptiveFactors, kNumBands> bands;
  PerceptiveFactors mid;
};

BandFactors factors(const PulseTrains& trains);

}  // namespace roomray

#endif  // ROOMRAY_METRICS_HPP
