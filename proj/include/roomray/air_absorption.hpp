#ifndef ROOMRAY_AIR_ABSORPTION_HPP
#define ROOMRAY_AIR_ABSORPTION_HPP

#include "roomray/types.hpp"

namespace roomray {

/// Atmospheric conditions for the ISO 9613-1 pure-tone attenuation model.
/// Disabled means a lossless medium (beta = 0 in every band).
struct AirModel {
  double temperature_c = 20.0;
  double relative_humidity = 50.0;  // percent
  double pressure_kpa = 101.325;
  bool enabled = true;

  static AirModel off() {
    AirModel air;
    air.enabled = false;
    return air;
  }

  void validate() const;
};

/// ISO 9613-1 pure-tone atmospheric attenuation in dB/m at the given
/// frequency. Zero when the model is disabled.
double air_alpha_db_per_m(const AirModel& air, double frequency_hz);

/// Energy-domain attenuation coefficient in 1/m: energy decays as
/// exp(-beta * d). A level drop of alpha dB over d meters means
/// 10*log10(E0/E) = alpha*d, hence beta = alpha * ln(10) / 10.
double air_beta(const AirModel& air, double frequency_hz);

/// Beta evaluated at each octave band center.
BandArray air_beta_bands(const AirModel& air);

/// Alpha (dB/m) at each octave band center, for reporting.
BandArray air_alpha_bands_db_per_m(const AirModel& air);

}  // namespace roomray

#endif  // ROOMRAY_AIR_ABSORPTION_HPP
