#ifndef ROOMRAY_RIR_HPP
#define ROOMRAY_RIR_HPP

#include <array>
#include <vector>

#include "roomray/image_sources.hpp"
#include "roomray/types.hpp"

namespace roomray {

struct PulseEvent {
  double time_s = 0.0;
  double amplitude = 0.0;  // sound pressure, sqrt of energy
};

/// Arrival events of one octave band, sorted by time.
struct BandPulseTrain {
  int band = 0;
  std::vector<PulseEvent> events;
};

using PulseTrains = std::array<BandPulseTrain, kNumBands>;

/// Sampled impulse response plus the pulse trains it was built from.
struct RoomImpulseResponse {
  double sample_rate = 44100.0;
  std::vector<double> samples;  // broadband, sum of the filtered bands
  PulseTrains band_trains;
};

/// One event per image source per band at t = d/c with amplitude sqrt(E).
PulseTrains build_pulse_trains(const std::vector<ImageSource>& images,
                               double speed_of_sound);

/// Linear-phase windowed-sinc band-pass for one octave band: 1023 taps,
/// Hann window, edges fc/sqrt(2)..fc*sqrt(2).
std::vector<double> design_band_filter(int band, double sample_rate);

inline constexpr int kBandFilterTaps = 1023;
inline constexpr int kBandFilterDelay = (kBandFilterTaps - 1) / 2;

/// Convolve each train with its band filter (group delay compensated, the
/// pre-ring of t=0 events is clipped) and sum the bands in fixed order.
RoomImpulseResponse synthesize(const PulseTrains& trains, double sample_rate);

/// Linear convolution of an audio signal with the broadband response,
/// peak-normalized to -1 dBFS. Sample rates must match.
std::vector<double> auralize(const RoomImpulseResponse& rir,
                             const std::vector<double>& audio,
                             double audio_sample_rate);

}  // namespace roomray

#endif  // ROOMRAY_RIR_HPP
