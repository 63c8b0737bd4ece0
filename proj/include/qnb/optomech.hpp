#pragma once

// Spectral quantum-noise model of a laser-interferometric position
// measurement: mechanical susceptibility, optomechanical coupling factor
// K(f), the standard quantum limit, quadrature input-output relations, and
// displacement-referred quantum noise with and without squeezed injection.
//
// All spectra are one-sided displacement PSDs in m^2/Hz. The detector
// bandwidth gamma enters the K(f) Lorentzian as a frequency in Hz.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qnb/core.hpp"

namespace qnb {

struct InterferometerConfig {
  double mirror_mass_kg;
  double arm_length_m;
  double arm_power_w;
  double laser_frequency_hz;
  double detector_bandwidth_hz;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0)) throw std::invalid_argument(std::string("InterferometerConfig: ") + name + " must be > 0");
    };
    positive(mirror_mass_kg, "mirror_mass_kg");
    positive(arm_length_m, "arm_length_m");
    positive(arm_power_w, "arm_power_w");
    positive(laser_frequency_hz, "laser_frequency_hz");
    positive(detector_bandwidth_hz, "detector_bandwidth_hz");
  }
};

// Mechanical response to force. Free mass above the pendulum resonance, or
// a velocity-damped oscillator for suspended probes.
class Susceptibility {
 public:
  enum class Kind { free_mass, damped_oscillator };

  static Susceptibility free_mass(double mass_kg) {
    if (!(mass_kg > 0.0)) throw std::invalid_argument("Susceptibility: mass must be > 0");
    return Susceptibility(Kind::free_mass, mass_kg, 0.0, 0.0);
  }

  static Susceptibility damped_oscillator(double mass_kg, double resonance_hz, double quality) {
    if (!(mass_kg > 0.0)) throw std::invalid_argument("Susceptibility: mass must be > 0");
    if (!(resonance_hz > 0.0)) throw std::invalid_argument("Susceptibility: resonance must be > 0");
    if (!(quality > 0.0)) throw std::invalid_argument("Susceptibility: quality must be > 0");
    return Susceptibility(Kind::damped_oscillator, mass_kg, resonance_hz, quality);
  }

  Kind kind() const { return kind_; }
  double mass_kg() const { return mass_kg_; }
  double resonance_hz() const { return resonance_hz_; }
  double quality() const { return quality_; }

 private:
  Susceptibility(Kind kind, double mass_kg, double resonance_hz, double quality)
      : kind_(kind), mass_kg_(mass_kg), resonance_hz_(resonance_hz), quality_(quality) {}

  Kind kind_;
  double mass_kg_;
  double resonance_hz_;
  double quality_;
};

/// chi(f) in m/N. Free mass: -1/(m (2 pi f)^2). Oscillator:
/// 1/(m [(2 pi f0)^2 - (2 pi f)^2 + i (2 pi f0)(2 pi f)/Q]).
inline std::complex<double> susceptibility(const Susceptibility& s, double f) {
  if (!(f > 0.0)) throw std::invalid_argument("susceptibility: f must be > 0");
  const double w = 2.0 * constants::pi * f;
  if (s.kind() == Susceptibility::Kind::free_mass) {
    return {-1.0 / (s.mass_kg() * w * w), 0.0};
  }
  const double w0 = 2.0 * constants::pi * s.resonance_hz();
  const std::complex<double> den(s.mass_kg() * (w0 * w0 - w * w), s.mass_kg() * w0 * w / s.quality());
  return 1.0 / den;
}

/// Normalized circulating-power scale J = 8 pi nu0 P_arm / (M L c), in s^-3.
inline double power_scale(const InterferometerConfig& cfg) {
  cfg.validate();
  return 8.0 * constants::pi * cfg.laser_frequency_hz * cfg.arm_power_w /
         (cfg.mirror_mass_kg * cfg.arm_length_m * constants::c);
}

/// Optomechanical coupling (Kimble) factor
/// K(f) = 2 J gamma / ((2 pi)^3 f^2 (gamma^2 + f^2)); strictly decreasing in f.
inline double kimble_factor(const InterferometerConfig& cfg, double f) {
  if (!(f > 0.0)) throw std::invalid_argument("kimble_factor: f must be > 0");
  const double j = power_scale(cfg);
  const double g = cfg.detector_bandwidth_hz;
  const double two_pi = 2.0 * constants::pi;
  return 2.0 * j * g / (two_pi * two_pi * two_pi * f * f * (g * g + f * f));
}

/// Free-mirror SQL amplitude spectral density (1/2pi) sqrt(8 hbar / (M f^2)), m/sqrt(Hz).
inline double sql_asd(double mass_kg, double f) {
  if (!(mass_kg > 0.0)) throw std::invalid_argument("sql_asd: mass must be > 0");
  if (!(f > 0.0)) throw std::invalid_argument("sql_asd: f must be > 0");
  return std::sqrt(8.0 * constants::hbar / (mass_kg * f * f)) / (2.0 * constants::pi);
}

/// SQL displacement PSD x_SQL(f)^2, m^2/Hz.
inline double sql_psd(double mass_kg, double f) {
  const double a = sql_asd(mass_kg, f);
  return a * a;
}

enum class SpectrumComponent { qmn, qbn, total_quantum, sql, classical, total };

inline const char* to_string(SpectrumComponent c) {
  switch (c) {
    case SpectrumComponent::qmn: return "qmn";
    case SpectrumComponent::qbn: return "qbn";
    case SpectrumComponent::total_quantum: return "total_quantum";
    case SpectrumComponent::sql: return "sql";
    case SpectrumComponent::classical: return "classical";
    case SpectrumComponent::total: return "total";
  }
  return "?";
}

struct NoiseSpectrum {
  FrequencyGrid grid;
  SpectrumComponent component;
  std::vector<double> values;  // m^2/Hz, one per grid point

  NoiseSpectrum(FrequencyGrid grid_, SpectrumComponent component_, std::vector<double> values_)
      : grid(std::move(grid_)), component(component_), values(std::move(values_)) {
    if (values.size() != grid.size()) {
      throw std::invalid_argument("NoiseSpectrum: values/grid length mismatch");
    }
    for (double v : values) {
      if (!(v >= 0.0)) throw std::invalid_argument("NoiseSpectrum: values must be >= 0");
    }
  }
};

struct QuantumNoiseComponents {
  NoiseSpectrum qmn;
  NoiseSpectrum qbn;
  NoiseSpectrum total_quantum;
};

/// Unsqueezed quantum noise S_x(f) = (x_SQL^2/2)(1/K + K), split into the
/// measurement (1/K) and back-action (K) parts. total = qmn + qbn bin-wise.
inline QuantumNoiseComponents quantum_noise_unsqueezed(const InterferometerConfig& cfg,
                                                       const FrequencyGrid& grid) {
  std::vector<double> qmn(grid.size()), qbn(grid.size()), tot(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = grid[i];
    const double k = kimble_factor(cfg, f);
    const double half_sql = 0.5 * sql_psd(cfg.mirror_mass_kg, f);
    qmn[i] = half_sql / k;
    qbn[i] = half_sql * k;
    tot[i] = qmn[i] + qbn[i];
  }
  return {NoiseSpectrum(grid, SpectrumComponent::qmn, std::move(qmn)),
          NoiseSpectrum(grid, SpectrumComponent::qbn, std::move(qbn)),
          NoiseSpectrum(grid, SpectrumComponent::total_quantum, std::move(tot))};
}

/// Squeezed-injection bracket with optional optical loss:
/// V-(eta) cos^2(theta - vartheta) + V+(eta) sin^2(theta - vartheta),
/// V+- = eta e^{+-2r} + (1 - eta), vartheta = arctan K. eta = 1 recovers the
/// pure-injection expression.
inline double squeezed_bracket(double r, double theta, double k, double efficiency) {
  const double vartheta = std::atan(k);
  const double cd = std::cos(theta - vartheta);
  const double sd = std::sin(theta - vartheta);
  const double vm = efficiency * std::exp(-2.0 * r) + (1.0 - efficiency);
  const double vp = efficiency * std::exp(2.0 * r) + (1.0 - efficiency);
  return vm * cd * cd + vp * sd * sd;
}

/// Quantum noise with squeezed light injected at squeeze angle theta:
/// S_x(f) = (x_SQL^2/2)(1/K + K) * bracket. theta is periodic mod pi.
inline NoiseSpectrum quantum_noise_squeezed(const InterferometerConfig& cfg, double r, double theta,
                                            const FrequencyGrid& grid, double efficiency = 1.0) {
  if (r < 0.0) throw std::invalid_argument("quantum_noise_squeezed: r must be >= 0");
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("quantum_noise_squeezed: efficiency must be in [0, 1]");
  }
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double f = grid[i];
    const double k = kimble_factor(cfg, f);
    const double base = 0.5 * sql_psd(cfg.mirror_mass_kg, f) * (1.0 / k + k);
    vals[i] = base * squeezed_bracket(r, theta, k, efficiency);
  }
  return NoiseSpectrum(grid, SpectrumComponent::total_quantum, std::move(vals));
}

struct QuadraturePair {
  double x;
  double y;
};

/// Input-output relation for one sideband: b_X = a_X,
/// b_Y = a_Y - K a_X - signal (signal pre-scaled by the caller).
inline QuadraturePair input_output(double k, double a_x, double a_y, double signal) {
  return {a_x, a_y - k * a_x - signal};
}

/// Pointwise sum of two spectra on the same grid, labelled total.
inline NoiseSpectrum total_noise(const NoiseSpectrum& a, const NoiseSpectrum& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("total_noise: grid mismatch");
  std::vector<double> vals(a.values.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = a.values[i] + b.values[i];
  return NoiseSpectrum(a.grid, SpectrumComponent::total, std::move(vals));
}

}  // namespace qnb
