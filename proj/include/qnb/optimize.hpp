#pragma once

// Scalar root-finding and optimization on the noise model: locate f_SQL,
// the single-frequency optimal squeeze angle, and the angle minimizing
// band-integrated noise.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qnb/core.hpp"
#include "qnb/optomech.hpp"

namespace qnb {

enum class BandWeighting { flat, inverse_sql };

struct BandObjective {
  double f_lo;
  double f_hi;
  BandWeighting weighting = BandWeighting::flat;

  void validate() const {
    if (!(f_lo > 0.0 && f_lo < f_hi)) throw std::invalid_argument("BandObjective: need 0 < f_lo < f_hi");
  }
};

/// The unique frequency with K(f) = 1, by bisection on the strictly
/// decreasing K to 1e-12 relative.
inline double find_f_sql(const InterferometerConfig& cfg) {
  cfg.validate();
  double lo = cfg.detector_bandwidth_hz;
  double hi = lo;
  int guard = 0;
  while (kimble_factor(cfg, lo) < 1.0 && ++guard < 1024) lo *= 0.5;
  while (kimble_factor(cfg, hi) > 1.0 && ++guard < 1024) hi *= 2.0;
  if (guard >= 1024) throw std::runtime_error("find_f_sql: failed to bracket K(f) = 1");
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (kimble_factor(cfg, mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// vartheta(f) = arctan K(f): the angle minimizing the squeezed-injection
/// bracket at a single frequency.
inline double optimal_angle_at(const InterferometerConfig& cfg, double f) {
  return std::atan(kimble_factor(cfg, f));
}

struct AngleOptimum {
  double angle_rad;
  double cost;     // band-integrated weighted noise at angle_rad
  bool flat_cost;  // objective did not depend on the angle (e.g. r = 0)
};

namespace detail {

// Weighted trapezoidal band integral of the squeezed spectrum; a band that
// collapses to a single bin degenerates to the weighted bin value.
class BandCost {
 public:
  BandCost(const InterferometerConfig& cfg, double r, const BandObjective& obj,
           const FrequencyGrid& grid, double efficiency)
      : r_(r), efficiency_(efficiency) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double f = grid[i];
      if (f < obj.f_lo || f > obj.f_hi) continue;
      const double k = kimble_factor(cfg, f);
      const double w =
          obj.weighting == BandWeighting::inverse_sql ? 1.0 / sql_psd(cfg.mirror_mass_kg, f) : 1.0;
      base_.push_back(w * 0.5 * sql_psd(cfg.mirror_mass_kg, f) * (1.0 / k + k));
      kappa_.push_back(k);
      freq_.push_back(f);
    }
    if (freq_.empty()) throw std::invalid_argument("optimize_band_angle: band outside grid");
    weights_.assign(freq_.size(), 1.0);
    if (freq_.size() > 1) {
      for (std::size_t i = 0; i < freq_.size(); ++i) {
        const double left = i == 0 ? freq_[0] : freq_[i - 1];
        const double right = i + 1 == freq_.size() ? freq_.back() : freq_[i + 1];
        weights_[i] = 0.5 * (right - left);
      }
    }
  }

  double operator()(double theta) const {
    double cost = 0.0;
    for (std::size_t i = 0; i < freq_.size(); ++i) {
      cost += weights_[i] * base_[i] * squeezed_bracket(r_, theta, kappa_[i], efficiency_);
    }
    return cost;
  }

 private:
  double r_;
  double efficiency_;
  std::vector<double> freq_, kappa_, base_, weights_;
};

}  // namespace detail

/// Squeeze angle minimizing the band cost, by golden-section search on
/// [0, pi/2] seeded with a 64-point coarse scan (guards against surprises
/// even though the objective is a single sinusoid in 2*theta).
inline AngleOptimum optimize_band_angle(const InterferometerConfig& cfg, double r,
                                        const BandObjective& obj, const FrequencyGrid& grid,
                                        double efficiency = 1.0) {
  if (r < 0.0) throw std::invalid_argument("optimize_band_angle: r must be >= 0");
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("optimize_band_angle: efficiency must be in [0, 1]");
  }
  obj.validate();
  const detail::BandCost cost(cfg, r, obj, grid, efficiency);

  constexpr std::size_t kScanPoints = 64;
  const double span = 0.5 * constants::pi;
  double best = cost(0.0), worst = best;
  std::size_t best_i = 0;
  std::vector<double> scan(kScanPoints + 1);
  for (std::size_t i = 0; i <= kScanPoints; ++i) {
    const double th = span * static_cast<double>(i) / kScanPoints;
    scan[i] = cost(th);
    if (scan[i] < best) { best = scan[i]; best_i = i; }
    if (scan[i] > worst) worst = scan[i];
  }
  if (worst - best <= 1e-13 * worst) {
    return {0.0, scan[0], true};
  }

  double a = span * static_cast<double>(best_i > 0 ? best_i - 1 : 0) / kScanPoints;
  double b = span * static_cast<double>(best_i < kScanPoints ? best_i + 1 : kScanPoints) / kScanPoints;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = cost(x1), f2 = cost(x2);
  while (b - a > 1e-7) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a);
      f1 = cost(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a);
      f2 = cost(x2);
    }
  }
  const double theta = 0.5 * (a + b);
  return {theta, cost(theta), false};
}

}  // namespace qnb
