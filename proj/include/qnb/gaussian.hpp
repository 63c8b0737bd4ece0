#pragma once

// Single-mode Gaussian quadrature states as 2x2 covariance matrices.
// Convention: vacuum variance 1/4 per quadrature (Delta X = Delta Y = 1/2),
// Heisenberg bound det(Sigma) >= 1/16. The homodyne angle zeta = 0 reads
// the phase quadrature Y.

#include <cmath>
#include <stdexcept>

#include "qnb/core.hpp"

namespace qnb {

class CovarianceState {
 public:
  CovarianceState(double cxx, double cyy, double cxy) : cxx_(cxx), cyy_(cyy), cxy_(cxy) {
    if (!(cxx_ > 0.0)) throw std::invalid_argument("CovarianceState: cxx must be > 0");
    if (!(cyy_ > 0.0)) throw std::invalid_argument("CovarianceState: cyy must be > 0");
    // Slack scales with the magnitudes entering the determinant, so states
    // formed by large shears are not rejected for cancellation noise alone.
    const double floor = 1.0 / 16.0;
    const double slack = kInvariantSlack * (cxx_ * cyy_ + cxy_ * cxy_ + floor);
    if (det() < floor - slack) {
      throw std::invalid_argument("CovarianceState: det below the Heisenberg bound 1/16");
    }
  }

  double cxx() const { return cxx_; }
  double cyy() const { return cyy_; }
  double cxy() const { return cxy_; }
  double det() const { return cxx_ * cyy_ - cxy_ * cxy_; }

 private:
  double cxx_, cyy_, cxy_;
};

inline CovarianceState vacuum() { return CovarianceState(0.25, 0.25, 0.0); }

/// Pure squeezed state: diag(e^{-2r}/4, e^{2r}/4) rotated by theta
/// (theta measured from the amplitude quadrature X).
inline CovarianceState squeezed(double r, double theta) {
  if (r < 0.0) throw std::invalid_argument("squeezed: r must be >= 0");
  const double vm = std::exp(-2.0 * r) / 4.0;
  const double vp = std::exp(2.0 * r) / 4.0;
  const double cth = std::cos(theta);
  const double sth = std::sin(theta);
  return CovarianceState(vm * cth * cth + vp * sth * sth,
                         vm * sth * sth + vp * cth * cth,
                         (vm - vp) * sth * cth);
}

/// Radiation-pressure shear Y <- Y - K*X, i.e. Sigma -> S Sigma S^T with
/// S = [[1,0],[-K,1]]. Symplectic: preserves det(Sigma).
inline CovarianceState ponderomotive(const CovarianceState& s, double K) {
  return CovarianceState(s.cxx(),
                         s.cyy() - 2.0 * K * s.cxy() + K * K * s.cxx(),
                         s.cxy() - K * s.cxx());
}

/// Mix with vacuum: Sigma -> eta*Sigma + (1-eta)*vacuum.
inline CovarianceState loss_channel(const CovarianceState& s, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("loss_channel: eta must be in [0, 1]");
  const double v = (1.0 - eta) * 0.25;
  return CovarianceState(eta * s.cxx() + v, eta * s.cyy() + v, eta * s.cxy());
}

/// Variance of the quadrature X*sin(zeta) + Y*cos(zeta); zeta = 0 reads Y.
/// Evaluated in Schur-complement form, which keeps the back-action
/// cancellation at tan(zeta) = K intact in floating point.
inline double homodyne_variance(const CovarianceState& s, double zeta) {
  const double sz = std::sin(zeta);
  const double cz = std::cos(zeta);
  const double q = s.cxy() / s.cxx();
  const double along = sz + cz * q;
  return s.cxx() * along * along + cz * cz * (s.cyy() - s.cxy() * q);
}

/// Homodyne angle at which the back-action contribution of the input
/// amplitude quadrature cancels after a ponderomotive shear of strength K.
inline double evasion_angle(double K) {
  if (K < 0.0) throw std::invalid_argument("evasion_angle: K must be >= 0");
  return std::atan(K);
}

inline double purity(const CovarianceState& s) { return 1.0 / (4.0 * std::sqrt(s.det())); }

/// Product of the principal-axis standard deviations in units of the
/// minimum-uncertainty product 1/4; 1 for pure states.
inline double uncertainty_product(const CovarianceState& s) { return 4.0 * std::sqrt(s.det()); }

struct MinVariance {
  double angle;     // rad, in [0, pi)
  double variance;  // smallest eigenvalue of Sigma
};

/// Angle and value of the minimum homodyne variance over zeta in [0, pi).
/// Isotropic states tie-break to angle 0.
inline MinVariance min_variance_angle(const CovarianceState& s) {
  // V(zeta) = mean + a*cos(2 zeta) + b*sin(2 zeta)
  const double mean = 0.5 * (s.cxx() + s.cyy());
  const double a = 0.5 * (s.cyy() - s.cxx());
  const double b = s.cxy();
  const double amp = std::hypot(a, b);
  if (amp <= kInvariantSlack * mean) {
    return {0.0, mean};
  }
  double zeta = 0.5 * (std::atan2(b, a) + constants::pi);
  if (zeta >= constants::pi) zeta -= constants::pi;
  if (zeta < 0.0) zeta += constants::pi;
  return {zeta, mean - amp};
}

}  // namespace qnb
