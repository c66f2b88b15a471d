#include "roomray/emission.hpp"

#include <cmath>
#include <stdexcept>

namespace roomray {

void SourceConfig::validate() const {
  if (ray_count < 1) {
    throw std::invalid_argument("source ray_count must be >= 1");
  }
  if ((initial_energy < 0.0).any()) {
    throw std::invalid_argument("source initial_energy must be >= 0");
  }
}

std::vector<Vec3> fibonacci_directions(int n) {
  if (n < 1) throw std::invalid_argument("fibonacci_directions needs n >= 1");
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double azimuth_step = 2.0 * M_PI * (1.0 - 1.0 / golden);
  std::vector<Vec3> dirs(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = azimuth_step * k;
    dirs[k] = Vec3(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return dirs;
}

std::vector<Ray> emit(const SourceConfig& source) {
  source.validate();
  const auto dirs = fibonacci_directions(source.ray_count);
  std::vector<Ray> rays(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    rays[i].origin = source.position;
    rays[i].dir = dirs[i];
    rays[i].band_multiplier = BandArray::Ones();
    rays[i].path_length = 0.0;
    rays[i].alive = true;
  }
  return rays;
}

}  // namespace roomray
