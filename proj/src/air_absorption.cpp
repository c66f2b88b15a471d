#include "roomray/air_absorption.hpp"

#include <cmath>
#include <stdexcept>

namespace roomray {

void AirModel::validate() const {
  if (!enabled) return;
  if (temperature_c < -20.0 || temperature_c > 50.0) {
    throw std::invalid_argument("air temperature outside [-20, 50] C");
  }
  if (relative_humidity < 10.0 || relative_humidity > 100.0) {
    throw std::invalid_argument("relative humidity outside [10, 100] %");
  }
  if (pressure_kpa < 80.0 || pressure_kpa > 120.0) {
    throw std::invalid_argument("pressure outside [80, 120] kPa");
  }
}

double air_alpha_db_per_m(const AirModel& air, double frequency_hz) {
  if (!air.enabled) return 0.0;
  air.validate();

  const double t_kelvin = air.temperature_c + 273.15;
  const double t_ref = 293.15;        // 20 C
  const double t_triple = 273.16;     // triple point of water
  const double p_ref = 101.325;       // kPa
  const double t_rel = t_kelvin / t_ref;
  const double p_rel = air.pressure_kpa / p_ref;

  // molar concentration of water vapour from relative humidity
  const double c_sat = -6.8346 * std::pow(t_triple / t_kelvin, 1.261) + 4.6151;
  const double h = air.relative_humidity * std::pow(10.0, c_sat) / p_rel;

  // oxygen and nitrogen relaxation frequencies
  const double fr_oxygen =
      p_rel * (24.0 + 4.04e4 * h * (0.02 + h) / (0.391 + h));
  const double fr_nitrogen =
      p_rel * std::pow(t_rel, -0.5) *
      (9.0 + 280.0 * h * std::exp(-4.170 * (std::pow(t_rel, -1.0 / 3.0) - 1.0)));

  const double f2 = frequency_hz * frequency_hz;
  const double classical = 1.84e-11 / p_rel * std::sqrt(t_rel);
  const double relaxation =
      std::pow(t_rel, -2.5) *
      (0.01275 * std::exp(-2239.1 / t_kelvin) /
           (fr_oxygen + f2 / fr_oxygen) +
       0.1068 * std::exp(-3352.0 / t_kelvin) /
           (fr_nitrogen + f2 / fr_nitrogen));

  return 8.686 * f2 * (classical + relaxation);
}

double air_beta(const AirModel& air, double frequency_hz) {
  return air_alpha_db_per_m(air, frequency_hz) * std::log(10.0) / 10.0;
}

BandArray air_beta_bands(const AirModel& air) {
  BandArray beta;
  for (int b = 0; b < kNumBands; ++b) {
    beta[b] = air_beta(air, kBandCentersHz[b]);
  }
  return beta;
}

BandArray air_alpha_bands_db_per_m(const AirModel& air) {
  BandArray alpha;
  for (int b = 0; b < kNumBands; ++b) {
    alpha[b] = air_alpha_db_per_m(air, kBandCentersHz[b]);
  }
  return alpha;
}

}  // namespace roomray
