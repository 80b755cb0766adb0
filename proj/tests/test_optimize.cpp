#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qdiscord/discord.hpp"
#include "qdiscord/optimize.hpp"
#include "qdiscord/states.hpp"

using namespace qdiscord;

namespace {

constexpr double pi = std::numbers::pi;

double smooth_bowl(const MeasurementParams& m) {
  return (1 - std::cos(m.theta - 0.5)) + (1 - std::cos(m.phi + 1.0)) + (1 - std::cos(m.chi - 2.0)) +
         (m.psi - 0.3) * (m.psi - 0.3);
}

}  // namespace

TEST(WrapToChart, PeriodicAnglesAndClampedPsi) {
  const Point4 p = wrap_to_chart({pi + 0.25, -3 * pi + 0.1, 0.5, 2.0});
  EXPECT_NEAR(p[0], -pi + 0.25, 1e-12);
  EXPECT_NEAR(p[1], -pi + 0.1, 1e-12);
  EXPECT_EQ(p[2], 0.5);
  EXPECT_EQ(p[3], pi / 2);
  EXPECT_TRUE(MeasurementParams::from_array(wrap_to_chart({1e3, -1e3, 7.0, -9.0})).in_range());
}

TEST(Minimize, ConstantObjectiveStopsAfterGrid) {
  OptimizerConfig cfg;
  const OptimizeResult r = minimize_over_measurements([](const MeasurementParams&) { return 2.5; }, cfg);
  EXPECT_EQ(r.value, 2.5);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.argmin, kStandardMeasurement);
  EXPECT_EQ(r.evals_used, 1 + 9 * 9 * 9 * 9);
}

TEST(Minimize, SmoothInteriorMinimum) {
  const OptimizeResult r = minimize_over_measurements(smooth_bowl, OptimizerConfig{});
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.value, 1e-9);
  EXPECT_NEAR(r.argmin.theta, 0.5, 1e-3);
  EXPECT_NEAR(r.argmin.phi, -1.0, 1e-3);
  EXPECT_NEAR(r.argmin.chi, 2.0, 1e-3);
  EXPECT_NEAR(r.argmin.psi, 0.3, 1e-3);
  EXPECT_LE(r.evals_used, 20000);
}

TEST(Minimize, MinimumAcrossTheSeam) {
  // Minimum at theta = pi - 0.02; the simplex has to cross the +-pi seam.
  auto f = [](const MeasurementParams& m) {
    return (1 - std::cos(m.theta - (pi - 0.02))) + 0.1 * (1 - std::cos(m.phi)) + 0.1 * m.psi * m.psi +
           0.1 * (1 - std::cos(m.chi));
  };
  const OptimizeResult r = minimize_over_measurements(f, OptimizerConfig{});
  EXPECT_LT(r.value, 1e-9);
  EXPECT_NEAR(std::cos(r.argmin.theta - (pi - 0.02)), 1.0, 1e-8);
  EXPECT_TRUE(r.argmin.in_range());
}

TEST(Minimize, BellDisturbanceIsFlat) {
  const DisturbanceObjective obj(bell());
  const OptimizeResult r =
      minimize_over_measurements([&](const MeasurementParams& m) { return obj.trace_norm(m); }, {});
  EXPECT_NEAR(r.value, 4.0 / 3.0, 1e-12);
  EXPECT_TRUE(r.converged);
}

TEST(Minimize, AcStateAttainsStandardMeasurement) {
  const double a = 0.2, c = 0.1;
  const DisturbanceObjective obj(ac_state(a, c));
  const OptimizeResult r =
      minimize_over_measurements([&](const MeasurementParams& m) { return obj.trace_norm(m); }, {});
  EXPECT_NEAR(r.value, 2.0 * std::sqrt(a * a + c * c), 1e-9);
  EXPECT_NEAR(0.75 * r.value, 1.5 * std::sqrt(0.05), 1e-9);
  // The minimizer acts like the standard measurement on the correlations.
  const Matrix8r t = obj.bloch().t;
  EXPECT_LT(((superop_M(r.argmin) - superop_M(kStandardMeasurement)) * t).cwiseAbs().maxCoeff(), 1e-4);
}

TEST(Minimize, NeverWorseThanStandardMeasurement) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
    auto f = [&](const MeasurementParams& m) {
      return c0 * std::sin(3 * m.theta) * std::cos(m.phi) + c1 * std::cos(2 * m.chi + m.psi) +
             c2 * std::sin(m.phi * m.psi) + c3 * std::cos(m.theta - m.chi);
    };
    OptimizerConfig cfg;
    cfg.grid_points_per_axis = 5;
    cfg.seed = static_cast<std::uint64_t>(trial);
    const OptimizeResult r = minimize_over_measurements(f, cfg);
    EXPECT_LE(r.value, f(kStandardMeasurement));
    EXPECT_TRUE(r.argmin.in_range());
    EXPECT_DOUBLE_EQ(r.value, f(r.argmin));
  }
}

TEST(Minimize, DeterministicForFixedSeed) {
  const DisturbanceObjective obj(horodecki(2.5));
  auto f = [&](const MeasurementParams& m) { return obj.hs_norm_sq(m); };
  OptimizerConfig cfg;
  cfg.seed = 42;
  const OptimizeResult a = minimize_over_measurements(f, cfg);
  const OptimizeResult b = minimize_over_measurements(f, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.argmin, b.argmin);
  EXPECT_EQ(a.evals_used, b.evals_used);
}

TEST(Minimize, MoreRestartsNeverHurt) {
  const DisturbanceObjective obj(horodecki(2.0));
  auto f = [&](const MeasurementParams& m) { return obj.hs_norm_sq(m); };
  double previous = INFINITY;
  for (int restarts : {0, 2, 5, 10}) {
    OptimizerConfig cfg;
    cfg.refinement_restarts = restarts;
    cfg.max_evals = 60000;
    const double v = minimize_over_measurements(f, cfg).value;
    EXPECT_LE(v, previous + 1e-15) << "restarts=" << restarts;
    previous = v;
  }
}

TEST(Minimize, FinerNestedGridsNeverHurt) {
  const DisturbanceObjective obj(horodecki(3.0));
  auto f = [&](const MeasurementParams& m) { return obj.hs_norm_sq(m); };
  double previous = INFINITY;
  for (int grid : {3, 5, 9}) {
    OptimizerConfig cfg;
    cfg.grid_points_per_axis = grid;
    cfg.max_evals = 60000;
    const double v = minimize_over_measurements(f, cfg).value;
    EXPECT_LE(v, previous + 1e-12) << "grid=" << grid;
    previous = v;
  }
}

TEST(Minimize, ExhaustedBudgetReportsNotConverged) {
  OptimizerConfig cfg;
  cfg.grid_points_per_axis = 3;
  cfg.max_evals = 81 + 1 + 12;
  const OptimizeResult r = minimize_over_measurements(smooth_bowl, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.value, smooth_bowl(kStandardMeasurement));
  EXPECT_LE(r.evals_used, cfg.max_evals);
}

TEST(OptimizerConfig, Validation) {
  OptimizerConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.grid_points_per_axis = 1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.simplex_tolerance = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.refinement_restarts = -1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_evals = 6000;   // smaller than the 9^4 grid
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
