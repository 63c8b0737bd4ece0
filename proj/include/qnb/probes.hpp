#pragma once

// Calculators for mechanical quantum probes: ground-state position width,
// decoherence-timescale survival, and upper bounds on spontaneous
// decoherence from sub-SQL noise margins.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qnb/core.hpp"
#include "qnb/optomech.hpp"

namespace qnb {

struct MechanicalOscillator {
  double mass_kg;
  double resonance_hz;

  void validate() const {
    if (!(mass_kg > 0.0)) throw std::invalid_argument("MechanicalOscillator: mass_kg must be > 0");
    if (!(resonance_hz > 0.0)) throw std::invalid_argument("MechanicalOscillator: resonance_hz must be > 0");
  }
};

struct DecoherenceScenario {
  std::string label;
  double tau_s;  // characteristic decoherence time

  void validate() const {
    if (!(tau_s > 0.0)) throw std::invalid_argument("DecoherenceScenario: tau_s must be > 0");
  }
};

/// Ground-state half-width position uncertainty sqrt(hbar / (4 pi m f_m)).
inline double zero_point_width(const MechanicalOscillator& osc) {
  osc.validate();
  return std::sqrt(constants::hbar / (4.0 * constants::pi * osc.mass_kg * osc.resonance_hz));
}

/// Coherence surviving after t_verify under first-order decay: exp(-t/tau).
/// Multiplicative over sequential intervals.
inline double survival_fraction(const DecoherenceScenario& scenario, double t_verify) {
  scenario.validate();
  return std::exp(-t_verify / scenario.tau_s);
}

/// Largest band-constant additive displacement PSD B with
/// model + B <= observed * (1 + tol) at every in-band bin, floored at 0.
/// The sql spectrum rides along for grid consistency and margin reporting.
inline double decoherence_upper_bound(const NoiseSpectrum& model, const NoiseSpectrum& observed,
                                      const NoiseSpectrum& sql, double band_lo, double band_hi,
                                      double tol = 0.05) {
  if (!(model.grid == observed.grid) || !(model.grid == sql.grid)) {
    throw std::invalid_argument("decoherence_upper_bound: grid mismatch");
  }
  if (!(band_lo <= band_hi) || band_lo < model.grid.front() || band_hi > model.grid.back()) {
    throw std::invalid_argument("decoherence_upper_bound: band outside grid");
  }
  double bound = std::numeric_limits<double>::infinity();
  std::size_t in_band = 0;
  for (std::size_t i = 0; i < model.grid.size(); ++i) {
    const double f = model.grid[i];
    if (f < band_lo || f > band_hi) continue;
    ++in_band;
    bound = std::min(bound, observed.values[i] * (1.0 + tol) - model.values[i]);
  }
  if (in_band == 0) throw std::invalid_argument("decoherence_upper_bound: empty band");
  return std::max(bound, 0.0);
}

}  // namespace qnb
