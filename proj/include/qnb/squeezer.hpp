#pragma once

// Squeezer parameters, dB <-> squeeze-factor conversions, and optical
// efficiency chains. dB values are variance ratios vs. vacuum:
// db = 10 log10(V / V_vac).

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnb/gaussian.hpp"

namespace qnb {

struct EfficiencyStage {
  std::string label;
  double eta;  // in [0, 1]
};

struct EfficiencyChain {
  std::vector<EfficiencyStage> stages;

  void validate() const {
    for (const auto& s : stages) {
      if (!(s.eta >= 0.0 && s.eta <= 1.0)) {
        throw std::invalid_argument("EfficiencyChain: stage '" + s.label + "' eta must be in [0, 1]");
      }
    }
  }
};

// Generated squeezing is stored as a positive magnitude; the sign of the
// squeezed side is applied at presentation.
struct SqueezerConfig {
  double generated_db;
  double angle_rad;
  EfficiencyChain chain;

  void validate() const {
    if (!(generated_db >= 0.0)) throw std::invalid_argument("SqueezerConfig: generated_db must be >= 0");
    chain.validate();
  }
};

/// r = db ln(10)/20, so that the variance ratio e^{2r} = 10^{db/10}.
inline double db_to_r(double db) { return db * std::numbers::ln10 / 20.0; }

inline double r_to_db(double r) { return 20.0 * r / std::numbers::ln10; }

/// Product of the stage efficiencies (losses with vacuum environments
/// compose multiplicatively; order is kept for reporting only).
inline double chain_efficiency(const EfficiencyChain& chain) {
  chain.validate();
  double eta = 1.0;
  for (const auto& s : chain.stages) eta *= s.eta;
  return eta;
}

struct EffectiveSqueezing {
  double squeezed_db;      // <= 0 while any squeezing survives
  double antisqueezed_db;  // >= 0
};

/// Squeezing levels after loss: V_-+ = eta 10^{-+db/10} + (1 - eta),
/// reported as 10 log10 V_-+.
inline EffectiveSqueezing effective_db(double db, double eta) {
  if (!(db >= 0.0)) throw std::invalid_argument("effective_db: db must be >= 0");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("effective_db: eta must be in [0, 1]");
  const double vm = eta * std::pow(10.0, -db / 10.0) + (1.0 - eta);
  const double vp = eta * std::pow(10.0, db / 10.0) + (1.0 - eta);
  return {10.0 * std::log10(vm), 10.0 * std::log10(vp)};
}

inline EffectiveSqueezing effective_db(double db, const EfficiencyChain& chain) {
  return effective_db(db, chain_efficiency(chain));
}

/// State produced by a squeezer after its loss chain.
inline CovarianceState squeezer_output(const SqueezerConfig& cfg) {
  cfg.validate();
  return loss_channel(squeezed(db_to_r(cfg.generated_db), cfg.angle_rad), chain_efficiency(cfg.chain));
}

}  // namespace qnb
