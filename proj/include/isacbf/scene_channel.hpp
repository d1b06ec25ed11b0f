#pragma once

// Scene geometry, line-of-sight channels and unit conversions.
//
// The access point sits at the origin with uniform linear arrays laid along
// the y-axis and boresight toward +x. Angles passed to steering_vector() are
// measured counterclockwise from the +x boresight.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace isacbf {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;

inline constexpr double kBoltzmann = 1.380649e-23;     // J/K, exact SI
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s

inline double dbm_to_watt(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double p_w) { return 10.0 * std::log10(p_w) + 30.0; }
inline double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Thermal noise power 10log10(kTB) + NF in dBm, returned in watt.
inline double noise_power(double temperature_k, double bandwidth_hz, double noise_figure_db) {
  const double ktb_dbm = 10.0 * std::log10(kBoltzmann * temperature_k * bandwidth_hz * 1000.0);
  return dbm_to_watt(ktb_dbm + noise_figure_db);
}

struct ArrayConfig {
  int n_tx = 4;
  int n_rx = 4;
  double spacing = 0.5;       // wavelengths
  double carrier_freq = 2.4e9;  // Hz

  double wavelength() const { return kSpeedOfLight / carrier_freq; }

  void validate() const {
    if (n_tx < 1 || n_rx < 1) throw std::invalid_argument("array needs at least one antenna");
    if (!(spacing > 0.0)) throw std::invalid_argument("antenna spacing must be positive");
    if (!(carrier_freq > 0.0)) throw std::invalid_argument("carrier frequency must be positive");
  }
};

struct Position {
  double x = 0.0;
  double y = 0.0;

  double range() const { return std::hypot(x, y); }
  // Counterclockwise from +x.
  double boresight_angle() const { return std::atan2(y, x); }

  friend bool operator==(const Position&, const Position&) = default;
};

inline double distance(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Scene {
  ArrayConfig array;
  Position tag_pos;
  Position user_pos;
};

struct SystemParams {
  double total_power = 1.0;  // P, watt
  double eta = 0.16;
  double sigma2_tag = 0.0;
  double sigma2_reader = 0.0;
  double sigma2_user = 0.0;
  double gamma_user = 1.0;
  double gamma_tag = 1.0;
  double gamma_reader = 1.0;

  void validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(total_power)) throw std::invalid_argument("total power must be positive");
    if (!positive(eta) || eta > 1.0) throw std::invalid_argument("eta must lie in (0, 1]");
    if (!positive(sigma2_tag) || !positive(sigma2_reader) || !positive(sigma2_user))
      throw std::invalid_argument("noise variances must be positive");
    if (!positive(gamma_user) || !positive(gamma_tag) || !positive(gamma_reader))
      throw std::invalid_argument("SINR thresholds must be positive");
  }
};

struct ChannelSet {
  CVector h_t;   // AP transmit array -> tag
  CVector h_u;   // AP transmit array -> user
  cdouble h_tu;  // tag -> user
  // Tag -> AP receive array. Same vector as h_t by reciprocity when n_rx == n_tx.
  CVector h_t_rx;
};

// Element n is exp(j 2 pi spacing n sin(angle)).
inline CVector steering_vector_n(int n, double spacing, double angle) {
  CVector a(n);
  const double step = 2.0 * std::numbers::pi * spacing * std::sin(angle);
  for (int i = 0; i < n; ++i) a[i] = std::polar(1.0, step * i);
  return a;
}

inline CVector steering_vector(const ArrayConfig& array, double angle) {
  return steering_vector_n(array.n_tx, array.spacing, angle);
}

inline double friis_gain(double distance_m, double wavelength_m) {
  if (!(distance_m > 0.0)) throw std::domain_error("friis_gain: distance must be positive");
  const double r = wavelength_m / (4.0 * std::numbers::pi * distance_m);
  return r * r;
}

// Amplitude and propagation phase of a free-space link of the given length.
inline cdouble propagation(double distance_m, double wavelength_m) {
  return std::sqrt(friis_gain(distance_m, wavelength_m)) *
         std::polar(1.0, -2.0 * std::numbers::pi * distance_m / wavelength_m);
}

inline CVector los_channel(const ArrayConfig& array, const Position& pos) {
  const double r = pos.range();
  if (!(r > 0.0)) throw std::domain_error("los_channel: position coincides with the access point");
  return propagation(r, array.wavelength()) * steering_vector(array, pos.boresight_angle());
}

inline cdouble scalar_channel(const Position& a, const Position& b, double wavelength_m) {
  const double d = distance(a, b);
  if (!(d > 0.0)) throw std::domain_error("scalar_channel: coincident positions");
  return propagation(d, wavelength_m);
}

inline ChannelSet make_channels(const Scene& scene) {
  scene.array.validate();
  if (scene.tag_pos == scene.user_pos) throw std::domain_error("tag and user positions coincide");
  ChannelSet ch;
  ch.h_t = los_channel(scene.array, scene.tag_pos);
  ch.h_u = los_channel(scene.array, scene.user_pos);
  ch.h_tu = scalar_channel(scene.tag_pos, scene.user_pos, scene.array.wavelength());
  if (scene.array.n_rx == scene.array.n_tx) {
    ch.h_t_rx = ch.h_t;
  } else {
    ArrayConfig rx = scene.array;
    rx.n_tx = rx.n_rx;
    ch.h_t_rx = los_channel(rx, scene.tag_pos);
  }
  return ch;
}

struct Thresholds {
  double gamma_tag;
  double gamma_reader;
};

// A sensitivity is a received-power floor; dividing by the noise variance
// turns it into the SINR threshold that implies it.
inline Thresholds thresholds_from_sensitivity(double sens_tag_dbm, double sens_reader_dbm,
                                              double sigma2_tag, double sigma2_reader) {
  return {dbm_to_watt(sens_tag_dbm) / sigma2_tag, dbm_to_watt(sens_reader_dbm) / sigma2_reader};
}

// Physical setup in engineering units. to_params() yields the linear
// quantities used by the beamforming modules.
struct LinkBudget {
  double total_power_dbm = 30.0;
  double temperature_k = 270.0;
  double bandwidth_hz = 10e6;
  double noise_figure_db = 7.0;
  double eta = 0.16;
  double tag_sensitivity_dbm = -25.5;
  double reader_sensitivity_dbm = -94.0;
  double gamma_user_db = 0.0;

  SystemParams to_params() const {
    SystemParams p;
    p.total_power = dbm_to_watt(total_power_dbm);
    p.eta = eta;
    const double n0 = noise_power(temperature_k, bandwidth_hz, noise_figure_db);
    p.sigma2_tag = p.sigma2_reader = p.sigma2_user = n0;
    const auto th = thresholds_from_sensitivity(tag_sensitivity_dbm, reader_sensitivity_dbm, n0, n0);
    p.gamma_tag = th.gamma_tag;
    p.gamma_reader = th.gamma_reader;
    p.gamma_user = db_to_linear(gamma_user_db);
    return p;
  }
};

}  // namespace isacbf
