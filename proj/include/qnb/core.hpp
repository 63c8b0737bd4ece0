#pragma once

// Shared conventions for the whole library:
//   - frequencies are Fourier frequencies f in Hz (cycles/s), never angular;
//     formulas carry their 2*pi factors explicitly
//   - all spectral densities are one-sided, displacement-referred (m^2/Hz)
//   - double precision throughout; invariant checks use a 1e-12 relative slack

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnb {

namespace constants {
// CODATA, fixed exactly.
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double c = 299792458.0;         // m/s
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

// Relative slack applied to invariant checks (see conventions above).
inline constexpr double kInvariantSlack = 1e-12;

/// Smallest time-frequency phase space area of a Fourier-limited mode.
inline double min_fourier_area() { return 1.0 / (4.0 * constants::pi); }

// Strictly increasing grid of positive Fourier frequencies.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) {
      throw std::invalid_argument("FrequencyGrid: need at least 1 point");
    }
    double prev = 0.0;
    for (double f : points_) {
      if (!(f > 0.0)) throw std::invalid_argument("FrequencyGrid: points must be > 0");
      if (!(f > prev)) throw std::invalid_argument("FrequencyGrid: points must be strictly increasing");
      prev = f;
    }
  }

  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

  friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<double> points_;
};

/// n logarithmically spaced frequencies with exact endpoints.
inline FrequencyGrid make_log_grid(double f_min, double f_max, std::size_t n) {
  if (!(f_min > 0.0)) throw std::invalid_argument("make_log_grid: f_min must be > 0");
  if (!(f_max > f_min)) throw std::invalid_argument("make_log_grid: f_max must be > f_min");
  if (n < 2) throw std::invalid_argument("make_log_grid: n must be >= 2");
  std::vector<double> pts(n);
  const double lo = std::log(f_min);
  const double hi = std::log(f_max);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  pts.front() = f_min;
  pts.back() = f_max;
  return FrequencyGrid(std::move(pts));
}

// One Fourier-limited time-frequency tile: eigenfrequency f_center +- half_bandwidth,
// energy absorbed over t_center +- half_duration.
struct ModeWindow {
  double f_center;
  double half_bandwidth;
  double t_center;
  double half_duration;

  ModeWindow(double f_center_, double half_bandwidth_, double t_center_, double half_duration_)
      : f_center(f_center_),
        half_bandwidth(half_bandwidth_),
        t_center(t_center_),
        half_duration(half_duration_) {
    if (!(half_bandwidth > 0.0)) throw std::invalid_argument("ModeWindow: half_bandwidth must be > 0");
    if (!(half_duration > 0.0)) throw std::invalid_argument("ModeWindow: half_duration must be > 0");
    if (area() < min_fourier_area() * (1.0 - kInvariantSlack)) {
      throw std::invalid_argument("ModeWindow: area below the Fourier limit 1/(4*pi)");
    }
  }

  double area() const { return half_bandwidth * half_duration; }
};

}  // namespace qnb
