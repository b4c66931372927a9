#pragma once

// 60 GHz link model: Friis path loss with flat-top antennas and Rayleigh
// (unit-mean exponential power) fading, Shannon rates, and the deterministic
// SNR-vs-distance curve used to size circular cells.
//
// Units: meters, hertz, milliwatts, milliwatts per hertz. Decibel values only
// appear in the conversion helpers at the bottom of this header.

namespace assoc60 {

struct ChannelParams {
  double wavelength = 5e-3;               // m
  double noise_density = 3.981071705534969e-20;  // mW/Hz (-134 dBm/MHz)
  double bandwidth = 1.2e9;               // Hz
  double ref_distance = 1.0;              // m
  double path_loss_exp = 2.0;
  double tx_power = 0.1;                  // mW
  double tx_gain = 1.0;
  double rx_gain = 1.0;
  double interference_density = 0.0;      // mW/Hz

  // Throws DomainError naming the first offending field.
  void validate() const;
};

struct LinkRealization {
  double distance;  // m
  double fading;
  double gain;
  double rate;      // bit/s
};

// G = Gtx Grx wavelength^2 fading / (16 pi^2 (d/d0)^eta). Applied verbatim
// for d < d0 as well.
double compute_gain(const ChannelParams& p, double distance, double fading);

// W log2(1 + P G / ((N0 + I) W)).
double compute_rate(const ChannelParams& p, double gain);

// Fading-free SNR at distance d; flat for d <= d0.
double snr_at_distance(const ChannelParams& p, double distance);

// Unique r > d0 with snr_at_distance(r) == target_snr (linear scale).
// Throws InfeasibleRadiusError when target_snr >= SNR(d0).
double cell_radius(const ChannelParams& p, double target_snr);

LinkRealization realize_link(const ChannelParams& p, double distance,
                             double fading);

double db_to_linear(double db);
double linear_to_db(double linear);
// dBm/MHz -> mW/Hz.
double dbm_per_mhz_to_mw_per_hz(double dbm_per_mhz);

}  // namespace assoc60
