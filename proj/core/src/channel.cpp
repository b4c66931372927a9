#include "assoc60/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "assoc60/error.hpp"

namespace assoc60 {
namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("channel parameter '") + field +
                      "' must be positive and finite");
  }
}

double free_space_factor(const ChannelParams& p) {
  return p.tx_gain * p.rx_gain * p.wavelength * p.wavelength /
         (16.0 * std::numbers::pi * std::numbers::pi);
}

double snr_at_reference(const ChannelParams& p) {
  return p.tx_power * free_space_factor(p) /
         ((p.noise_density + p.interference_density) * p.bandwidth);
}

}  // namespace

void ChannelParams::validate() const {
  require_positive(wavelength, "wavelength");
  require_positive(noise_density, "noise_density");
  require_positive(bandwidth, "bandwidth");
  require_positive(ref_distance, "ref_distance");
  require_positive(path_loss_exp, "path_loss_exp");
  require_positive(tx_power, "tx_power");
  require_positive(tx_gain, "tx_gain");
  require_positive(rx_gain, "rx_gain");
  if (path_loss_exp < 2.0 || path_loss_exp > 6.0) {
    throw DomainError("channel parameter 'path_loss_exp' must lie in [2, 6]");
  }
  if (!(interference_density >= 0.0) || !std::isfinite(interference_density)) {
    throw DomainError(
        "channel parameter 'interference_density' must be non-negative");
  }
}

double compute_gain(const ChannelParams& p, double distance, double fading) {
  if (!(distance > 0.0)) throw DomainError("distance must be positive");
  if (!(fading > 0.0)) throw DomainError("fading must be positive");
  return free_space_factor(p) * fading /
         std::pow(distance / p.ref_distance, p.path_loss_exp);
}

double compute_rate(const ChannelParams& p, double gain) {
  if (!(gain > 0.0)) throw DomainError("gain must be positive");
  const double snr = p.tx_power * gain /
                     ((p.noise_density + p.interference_density) * p.bandwidth);
  return p.bandwidth * std::log2(1.0 + snr);
}

double snr_at_distance(const ChannelParams& p, double distance) {
  if (!(distance > 0.0)) throw DomainError("distance must be positive");
  const double base = snr_at_reference(p);
  if (distance <= p.ref_distance) return base;
  return base * std::pow(distance / p.ref_distance, -p.path_loss_exp);
}

double cell_radius(const ChannelParams& p, double target_snr) {
  const double base = snr_at_reference(p);
  if (!(target_snr > 0.0) || target_snr >= base) {
    throw InfeasibleRadiusError(
        "target SNR must be positive and below the reference SNR " +
        std::to_string(base));
  }
  return p.ref_distance * std::pow(base / target_snr, 1.0 / p.path_loss_exp);
}

LinkRealization realize_link(const ChannelParams& p, double distance,
                             double fading) {
  const double gain = compute_gain(p, distance, fading);
  return {distance, fading, gain, compute_rate(p, gain)};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double dbm_per_mhz_to_mw_per_hz(double dbm_per_mhz) {
  return db_to_linear(dbm_per_mhz) / 1e6;
}

}  // namespace assoc60
