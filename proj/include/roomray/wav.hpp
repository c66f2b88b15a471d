#ifndef ROOMRAY_WAV_HPP
#define ROOMRAY_WAV_HPP

#include <string>
#include <vector>

namespace roomray {

/// Mono 32-bit float WAV.
void write_wav(const std::string& path, const std::vector<double>& samples,
               double sample_rate);

struct WavData {
  std::vector<double> samples;
  double sample_rate = 0.0;
};

WavData read_wav(const std::string& path);

}  // namespace roomray

#endif  // ROOMRAY_WAV_HPP
