#include "roomray/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roomray {

namespace {

constexpr double kClarityClampDb = 99.0;

std::vector<DecayPoint> schroeder_curve(const std::vector<double>& times,
                                        const std::vector<double>& energies) {
  double total = 0.0;
  for (double e : energies) total += e;
  if (total <= 0.0) {
    throw std::invalid_argument("decay of an all-zero signal is undefined");
  }
  std::vector<DecayPoint> curve(times.size());
  double tail = total;
  for (std::size_t i = 0; i < times.size(); ++i) {
    curve[i].time_s = times[i];
    curve[i].level_db = 10.0 * std::log10(std::max(tail / total, 1e-300));
    tail -= energies[i];
  }
  return curve;
}

// Least-squares line over the curve segment with level in [lo, hi] dB;
// returns the decay time extrapolated to -60 dB, or an unreliable zero when
// the curve never spans the segment.
MetricValue decay_time(const std::vector<DecayPoint>& curve, double hi,
                       double lo) {
  bool reaches = false;
  for (const DecayPoint& p : curve) {
    if (p.level_db <= lo) {
      reaches = true;
      break;
    }
  }
  if (!reaches) return {0.0, false};

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (const DecayPoint& p : curve) {
    if (p.level_db > hi || p.level_db < lo) continue;
    sx += p.time_s;
    sy += p.level_db;
    sxx += p.time_s * p.time_s;
    sxy += p.time_s * p.level_db;
    ++n;
  }
  if (n < 2) return {0.0, false};
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return {0.0, false};
  const double slope = (n * sxy - sx * sy) / denom;
  if (slope >= 0.0) return {0.0, false};
  return {-60.0 / slope, true};
}

PerceptiveFactors factors_from_events(const std::vector<double>& times,
                                      const std::vector<double>& energies) {
  PerceptiveFactors out;
  double total = 0.0;
  for (double e : energies) total += e;
  if (total <= 0.0) return out;  // silent band: everything unreliable

  // windows are measured from the first arrival
  std::size_t first = 0;
  while (first < energies.size() && energies[first] <= 0.0) ++first;
  const double t0 = times[first];

  double early50 = 0.0, early80 = 0.0, late80 = 0.0, centroid = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double dt = times[i] - t0;
    const double e = energies[i];
    if (dt <= 0.050) early50 += e;
    if (dt <= 0.080) {
      early80 += e;
    } else {
      late80 += e;
    }
    centroid += dt * e;
  }

  out.spl_db = {10.0 * std::log10(total), true};
  out.d50_pct = {100.0 * early50 / total, true};
  if (late80 > 0.0) {
    const double c80 = 10.0 * std::log10(early80 / late80);
    out.c80_db = {std::clamp(c80, -kClarityClampDb, kClarityClampDb), true};
  } else {
    out.c80_db = {kClarityClampDb, true};  // all energy early
  }
  out.ts_ms = {1000.0 * centroid / total, true};

  const auto curve = schroeder_curve(times, energies);
  std::vector<DecayPoint> shifted(curve.begin() + first, curve.end());
  for (DecayPoint& p : shifted) p.time_s -= t0;
  out.edt_s = decay_time(shifted, 0.0, -10.0);
  out.t30_s = decay_time(shifted, -5.0, -35.0);
  return out;
}

MetricValue average(const MetricValue& a, const MetricValue& b) {
  return {0.5 * (a.value + b.value), a.reliable && b.reliable};
}

}  // namespace

std::vector<DecayPoint> schroeder(const std::vector<double>& samples,
                                  double sample_rate) {
  if (samples.empty()) {
    throw std::invalid_argument("decay of an empty signal is undefined");
  }
  std::vector<double> times(samples.size());
  std::vector<double> energies(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    times[i] = static_cast<double>(i) / sample_rate;
    energies[i] = samples[i] * samples[i];
  }
  return schroeder_curve(times, energies);
}

std::vector<DecayPoint> schroeder(const BandPulseTrain& train) {
  std::vector<double> times, energies;
  times.reserve(train.events.size());
  energies.reserve(train.events.size());
  for (const PulseEvent& e : train.events) {
    times.push_back(e.time_s);
    energies.push_back(e.amplitude * e.amplitude);
  }
  return schroeder_curve(times, energies);
}

PerceptiveFactors factors(const BandPulseTrain& train) {
  std::vector<double> times, energies;
  times.reserve(train.events.size());
  energies.reserve(train.events.size());
  for (const PulseEvent& e : train.events) {
    times.push_back(e.time_s);
    energies.push_back(e.amplitude * e.amplitude);
  }
  if (times.empty()) return {};
  return factors_from_events(times, energies);
}

PerceptiveFactors factors(const std::vector<double>& samples,
                          double sample_rate) {
  if (samples.empty()) return {};
  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  if (peak <= 0.0) return {};

  std::size_t first = 0;
  while (first < samples.size() && std::abs(samples[first]) < 1e-6 * peak) {
    ++first;
  }
  std::vector<double> times(samples.size() - first);
  std::vector<double> energies(samples.size() - first);
  for (std::size_t i = first; i < samples.size(); ++i) {
    times[i - first] = static_cast<double>(i - first) / sample_rate;
    energies[i - first] = samples[i] * samples[i];
  }
  return factors_from_events(times, energies);
}

BandFactors factors(const PulseTrains& trains) {
  BandFactors out;
  for (int b = 0; b < kNumBands; ++b) out.bands[b] = factors(trains[b]);
  const PerceptiveFactors& f500 = out.bands[3];
  const PerceptiveFactors& f1k = out.bands[4];
  out.mid.edt_s = average(f500.edt_s, f1k.edt_s);
  out.mid.t30_s = average(f500.t30_s, f1k.t30_s);
  out.mid.spl_db = average(f500.spl_db, f1k.spl_db);
  out.mid.c80_db = average(f500.c80_db, f1k.c80_db);
  out.mid.d50_pct = average(f500.d50_pct, f1k.d50_pct);
  out.mid.ts_ms = average(f500.ts_ms, f1k.ts_ms);
  return out;
}

}  // namespace roomray
