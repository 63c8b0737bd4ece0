#pragma once

// Shared test utilities: deterministic random generators for configs and
// states, and the closed-form f_SQL used as an independent oracle against
// the bisection path.

#include <cmath>
#include <random>

#include "qnb/gaussian.hpp"
#include "qnb/optomech.hpp"

namespace qnbtest {

// Arm power making K(f_sql) = 1 for the given geometry:
// J = (2 pi)^3 f^2 (gamma^2 + f^2) / (2 gamma), P = J M L c / (8 pi nu0).
inline double fit_arm_power(double mass_kg, double arm_length_m, double laser_frequency_hz,
                            double detector_bandwidth_hz, double f_sql) {
  const double two_pi = 2.0 * qnb::constants::pi;
  const double j = two_pi * two_pi * two_pi * f_sql * f_sql *
                   (detector_bandwidth_hz * detector_bandwidth_hz + f_sql * f_sql) /
                   (2.0 * detector_bandwidth_hz);
  return j * mass_kg * arm_length_m * qnb::constants::c /
         (8.0 * qnb::constants::pi * laser_frequency_hz);
}

// 40 kg / 4 km geometry with a 1064 nm laser and the arm power fitted so
// that f_SQL lands at the requested frequency.
inline qnb::InterferometerConfig ligo_like(double f_sql = 30.0, double bandwidth_hz = 450.0) {
  const double nu0 = qnb::constants::c / 1.064e-6;
  return {40.0, 4000.0, fit_arm_power(40.0, 4000.0, nu0, bandwidth_hz, f_sql), nu0, bandwidth_hz};
}

// Positive root of f^2 (gamma^2 + f^2) = 2 J gamma / (2 pi)^3, solved in
// closed form as a quadratic in f^2.
inline double closed_form_f_sql(const qnb::InterferometerConfig& cfg) {
  const double two_pi = 2.0 * qnb::constants::pi;
  const double g = cfg.detector_bandwidth_hz;
  const double cc = 2.0 * qnb::power_scale(cfg) * g / (two_pi * two_pi * two_pi);
  return std::sqrt((-g * g + std::sqrt(g * g * g * g + 4.0 * cc)) / 2.0);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

// Random interferometer with f_SQL placed log-uniformly in [f_sql_lo, f_sql_hi].
inline qnb::InterferometerConfig random_config(std::mt19937_64& rng, double f_sql_lo = 5.0,
                                               double f_sql_hi = 500.0) {
  const double mass = log_uniform(rng, 1.0, 200.0);
  const double length = log_uniform(rng, 100.0, 10000.0);
  const double nu0 = log_uniform(rng, 1e14, 1e15);
  const double gamma = log_uniform(rng, 10.0, 2000.0);
  const double f_sql = log_uniform(rng, f_sql_lo, f_sql_hi);
  return {mass, length, fit_arm_power(mass, length, nu0, gamma, f_sql), nu0, gamma};
}

// Random valid Gaussian state: squeezed, partially lost, thermally scaled.
inline qnb::CovarianceState random_state(std::mt19937_64& rng, double r_max = 2.0) {
  const auto pure = qnb::squeezed(uniform(rng, 0.0, r_max), uniform(rng, 0.0, qnb::constants::pi));
  const auto mixed = qnb::loss_channel(pure, uniform(rng, 0.2, 1.0));
  const double t = uniform(rng, 1.0, 4.0);
  return qnb::CovarianceState(t * mixed.cxx(), t * mixed.cyy(), t * mixed.cxy());
}

}  // namespace qnbtest
