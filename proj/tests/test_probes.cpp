#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "qnb/probes.hpp"

using namespace qnb;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent check: scan feasibility of model + B <= observed (1 + tol)
// by bisection instead of the closed-form band minimum.
double bisect_bound(const NoiseSpectrum& model, const NoiseSpectrum& observed, double lo, double hi,
                    double tol) {
  auto feasible = [&](double b) {
    for (std::size_t i = 0; i < model.grid.size(); ++i) {
      const double f = model.grid[i];
      if (f < lo || f > hi) continue;
      if (model.values[i] + b > observed.values[i] * (1.0 + tol)) return false;
    }
    return true;
  };
  if (!feasible(0.0)) return 0.0;
  double blo = 0.0;
  double bhi = 1.0;
  for (std::size_t i = 0; i < model.grid.size(); ++i) {
    bhi = std::max(bhi, observed.values[i] * (1.0 + tol) * 2.0 + 1.0);
  }
  for (int it = 0; it < 500; ++it) {
    const double mid = 0.5 * (blo + bhi);
    (feasible(mid) ? blo : bhi) = mid;
  }
  return blo;
}

struct Instance {
  NoiseSpectrum model;
  NoiseSpectrum observed;
  NoiseSpectrum sql;
  double lo, hi;
};

Instance random_instance(std::mt19937_64& rng, std::size_t n = 40) {
  const auto grid = make_log_grid(10.0, 1000.0, n);
  std::vector<double> model(n), obs(n), sql(n);
  for (std::size_t i = 0; i < n; ++i) {
    model[i] = qnbtest::log_uniform(rng, 1e-42, 1e-39);
    obs[i] = model[i] * qnbtest::uniform(rng, 0.5, 3.0);
    sql[i] = model[i] * qnbtest::uniform(rng, 0.5, 1.5);
  }
  const double lo = qnbtest::uniform(rng, 12.0, 100.0);
  const double hi = lo * qnbtest::uniform(rng, 1.5, 8.0);
  return {NoiseSpectrum(grid, SpectrumComponent::total_quantum, model),
          NoiseSpectrum(grid, SpectrumComponent::total, obs),
          NoiseSpectrum(grid, SpectrumComponent::sql, sql), lo, std::min(hi, 1000.0)};
}

}  // namespace

TEST_CASE("zero-point width of the 5 ng / 500 Hz oscillator") {
  const MechanicalOscillator osc{5e-12, 500.0};
  const double width = zero_point_width(osc);
  CHECK_THAT(width, WithinRel(5.79379525908e-14, 1e-9));
  // well clear of the ~6e-13 value often quoted for this oscillator
  CHECK(width < 0.2 * 6e-13);
}

TEST_CASE("zero-point width scaling and unit construction") {
  const MechanicalOscillator base{3e-9, 700.0};
  const MechanicalOscillator heavy{4.0 * base.mass_kg, base.resonance_hz};
  CHECK_THAT(zero_point_width(heavy), WithinRel(zero_point_width(base) / 2.0, 1e-12));

  const MechanicalOscillator unit{constants::hbar / (4.0 * constants::pi), 1.0};
  CHECK_THAT(zero_point_width(unit), WithinRel(1.0, 1e-12));

  const MechanicalOscillator bad{0.0, 1.0};
  CHECK_THROWS_AS(zero_point_width(bad), std::invalid_argument);
}

TEST_CASE("survival fractions for the 50 Hz mode scenarios") {
  const DecoherenceScenario thermal{"thermalization", 3e-3};
  const DecoherenceScenario gravity{"gravity", 1e-6};

  CHECK(survival_fraction(thermal, 0.0) == 1.0);
  CHECK_THAT(survival_fraction(thermal, 100e-6), WithinRel(0.967216100482, 1e-11));
  CHECK_THAT(survival_fraction(gravity, 100e-6), WithinRel(3.72007597602e-44, 1e-9));

  const DecoherenceScenario bad{"bad", 0.0};
  CHECK_THROWS_AS(survival_fraction(bad, 1.0), std::invalid_argument);
}

TEST_CASE("survival fraction is multiplicative over intervals") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 300; ++i) {
    const DecoherenceScenario sc{"s", qnbtest::log_uniform(rng, 1e-7, 1e-1)};
    const double t1 = qnbtest::log_uniform(rng, 1e-7, 1e-2);
    const double t2 = qnbtest::log_uniform(rng, 1e-7, 1e-2);
    REQUIRE_THAT(survival_fraction(sc, t1) * survival_fraction(sc, t2),
                 WithinRel(survival_fraction(sc, t1 + t2), 1e-12));
  }
}

TEST_CASE("decoherence bound: self-consistency and constructed offset") {
  const auto grid = make_log_grid(10.0, 100.0, 16);
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = 1e-40 * (1.0 + 0.1 * i);
  const NoiseSpectrum model(grid, SpectrumComponent::total_quantum, vals);
  const NoiseSpectrum sql(grid, SpectrumComponent::sql, vals);

  // observed == model: only the tol headroom remains
  const double b_self = decoherence_upper_bound(model, model, sql, 10.0, 100.0, 0.05);
  CHECK_THAT(b_self, WithinRel(0.05 * vals[0], 1e-12));
  CHECK(decoherence_upper_bound(model, model, sql, 10.0, 100.0, 0.0) == 0.0);

  std::vector<double> shifted = vals;
  for (double& v : shifted) v += 1e-41;
  const NoiseSpectrum observed(grid, SpectrumComponent::total, shifted);
  CHECK_THAT(decoherence_upper_bound(model, observed, sql, 10.0, 100.0, 0.0),
             WithinRel(1e-41, 1e-9));

  // observed below the model floors at zero
  std::vector<double> below = vals;
  for (double& v : below) v *= 0.5;
  const NoiseSpectrum low(grid, SpectrumComponent::total, below);
  CHECK(decoherence_upper_bound(model, low, sql, 10.0, 100.0, 0.0) == 0.0);
}

TEST_CASE("decoherence bound rejects bad bands and grids") {
  const auto grid = make_log_grid(10.0, 100.0, 8);
  const std::vector<double> vals(grid.size(), 1e-40);
  const NoiseSpectrum model(grid, SpectrumComponent::total_quantum, vals);
  const NoiseSpectrum sql(grid, SpectrumComponent::sql, vals);

  CHECK_THROWS_AS(decoherence_upper_bound(model, model, sql, 200.0, 300.0, 0.05),
                  std::invalid_argument);
  CHECK_THROWS_AS(decoherence_upper_bound(model, model, sql, 50.0, 20.0, 0.05),
                  std::invalid_argument);
  // inside the grid span but between bins: no bin falls in the band
  CHECK_THROWS_AS(decoherence_upper_bound(model, model, sql, 10.5, 10.6, 0.05),
                  std::invalid_argument);

  const auto other = make_log_grid(10.0, 101.0, 8);
  const NoiseSpectrum mism(other, SpectrumComponent::total, std::vector<double>(8, 1e-40));
  CHECK_THROWS_AS(decoherence_upper_bound(model, mism, sql, 20.0, 80.0, 0.05),
                  std::invalid_argument);
}

TEST_CASE("decoherence bound matches bisection on random instances") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_instance(rng);
    for (const double tol : {0.0, 0.05, 0.2}) {
      const double closed =
          decoherence_upper_bound(inst.model, inst.observed, inst.sql, inst.lo, inst.hi, tol);
      const double scanned = bisect_bound(inst.model, inst.observed, inst.lo, inst.hi, tol);
      REQUIRE_THAT(closed, WithinAbs(scanned, 1e-9 * std::max(closed, 1e-42)));
    }
  }
}

TEST_CASE("decoherence bound is monotone in observed and model") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = random_instance(rng);
    const double base =
        decoherence_upper_bound(inst.model, inst.observed, inst.sql, inst.lo, inst.hi, 0.05);

    // raise one in-band observed bin: bound cannot decrease
    auto raised_obs = inst.observed.values;
    for (std::size_t i = 0; i < inst.model.grid.size(); ++i) {
      if (inst.model.grid[i] >= inst.lo && inst.model.grid[i] <= inst.hi) {
        raised_obs[i] *= 2.0;
        break;
      }
    }
    const NoiseSpectrum obs2(inst.model.grid, SpectrumComponent::total, raised_obs);
    REQUIRE(decoherence_upper_bound(inst.model, obs2, inst.sql, inst.lo, inst.hi, 0.05) >= base);

    // raise one in-band model bin: bound cannot increase
    auto raised_model = inst.model.values;
    for (std::size_t i = 0; i < inst.model.grid.size(); ++i) {
      if (inst.model.grid[i] >= inst.lo && inst.model.grid[i] <= inst.hi) {
        raised_model[i] *= 2.0;
        break;
      }
    }
    const NoiseSpectrum model2(inst.model.grid, SpectrumComponent::total_quantum, raised_model);
    REQUIRE(decoherence_upper_bound(model2, inst.observed, inst.sql, inst.lo, inst.hi, 0.05) <= base);
  }
}
