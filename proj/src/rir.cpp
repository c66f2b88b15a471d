#include "roomray/rir.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roomray {

PulseTrains build_pulse_trains(const std::vector<ImageSource>& images,
                               double speed_of_sound) {
  if (speed_of_sound <= 0.0) {
    throw std::invalid_argument("speed of sound must be > 0");
  }
  PulseTrains trains;
  for (int b = 0; b < kNumBands; ++b) trains[b].band = b;
  for (const ImageSource& image : images) {
    const double t = image.distance / speed_of_sound;
    for (int b = 0; b < kNumBands; ++b) {
      trains[b].events.push_back({t, std::sqrt(image.band_energy[b])});
    }
  }
  for (auto& train : trains) {
    std::sort(train.events.begin(), train.events.end(),
              [](const PulseEvent& a, const PulseEvent& b) {
                if (a.time_s != b.time_s) return a.time_s < b.time_s;
                return a.amplitude < b.amplitude;
              });
  }
  return trains;
}

std::vector<double> design_band_filter(int band, double sample_rate) {
  if (band < 0 || band >= kNumBands) {
    throw std::invalid_argument("band index out of range");
  }
  const double f_low = kBandCentersHz[band] / std::sqrt(2.0);
  const double f_high = kBandCentersHz[band] * std::sqrt(2.0);
  if (sample_rate < 2.0 * f_high) {
    throw std::invalid_argument("sample rate too low for the top band edge");
  }

  std::vector<double> taps(kBandFilterTaps);
  for (int n = 0; n < kBandFilterTaps; ++n) {
    const int m = n - kBandFilterDelay;
    double ideal;
    if (m == 0) {
      ideal = 2.0 * (f_high - f_low) / sample_rate;
    } else {
      ideal = (std::sin(2.0 * M_PI * f_high * m / sample_rate) -
               std::sin(2.0 * M_PI * f_low * m / sample_rate)) /
              (M_PI * m);
    }
    const double hann =
        0.5 * (1.0 - std::cos(2.0 * M_PI * n / (kBandFilterTaps - 1)));
    taps[n] = ideal * hann;
  }
  return taps;
}

RoomImpulseResponse synthesize(const PulseTrains& trains, double sample_rate) {
  RoomImpulseResponse rir;
  rir.sample_rate = sample_rate;
  rir.band_trains = trains;

  double last_event = 0.0;
  bool any_event = false;
  for (const auto& train : trains) {
    for (const PulseEvent& e : train.events) {
      if (e.time_s < 0.0) {
        throw std::invalid_argument("pulse events cannot precede t = 0");
      }
      last_event = std::max(last_event, e.time_s);
      any_event = true;
    }
  }
  if (!any_event) return rir;

  const std::size_t length =
      static_cast<std::size_t>(std::llround(last_event * sample_rate)) +
      kBandFilterDelay + 1;
  rir.samples.assign(length, 0.0);

  for (int b = 0; b < kNumBands; ++b) {
    const auto kernel = design_band_filter(b, sample_rate);
    for (const PulseEvent& e : trains[b].events) {
      const long center = std::lround(e.time_s * sample_rate);
      for (int n = 0; n < kBandFilterTaps; ++n) {
        const long j = center + n - kBandFilterDelay;
        if (j < 0) continue;  // pre-ring of early events is clipped at t = 0
        if (j >= static_cast<long>(length)) break;
        rir.samples[j] += e.amplitude * kernel[n];
      }
    }
  }
  return rir;
}

std::vector<double> auralize(const RoomImpulseResponse& rir,
                             const std::vector<double>& audio,
                             double audio_sample_rate) {
  if (audio_sample_rate != rir.sample_rate) {
    throw std::invalid_argument(
        "audio sample rate does not match the impulse response");
  }
  if (audio.empty() || rir.samples.empty()) return {};

  std::vector<double> out(audio.size() + rir.samples.size() - 1, 0.0);
  for (std::size_t i = 0; i < audio.size(); ++i) {
    const double a = audio[i];
    if (a == 0.0) continue;
    for (std::size_t j = 0; j < rir.samples.size(); ++j) {
      out[i + j] += a * rir.samples[j];
    }
  }

  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    const double gain = std::pow(10.0, -1.0 / 20.0) / peak;  // -1 dBFS
    for (double& v : out) v *= gain;
  }
  return out;
}

}  // namespace roomray
