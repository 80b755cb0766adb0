#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdiscord/measure.hpp"

namespace qdiscord {

struct OptimizerConfig {
  int grid_points_per_axis = 9;
  int refinement_restarts = 5;
  double simplex_tolerance = 1e-10;   // on the objective spread across the simplex
  int max_evals = 20000;
  std::uint64_t seed = 0;

  long long grid_evals() const {
    const long long n = grid_points_per_axis;
    return n * n * n * n;
  }

  void validate() const {
    if (grid_points_per_axis < 2)
      throw std::invalid_argument("OptimizerConfig: grid_points_per_axis must be >= 2");
    if (refinement_restarts < 0)
      throw std::invalid_argument("OptimizerConfig: refinement_restarts must be >= 0");
    if (!(simplex_tolerance > 0.0))
      throw std::invalid_argument("OptimizerConfig: simplex_tolerance must be > 0");
    if (max_evals <= 0) throw std::invalid_argument("OptimizerConfig: max_evals must be > 0");
    if (grid_evals() + 1 > max_evals)
      throw std::invalid_argument("OptimizerConfig: grid of " + std::to_string(grid_evals()) +
                                  " points exceeds max_evals " + std::to_string(max_evals));
  }
};

struct OptimizeResult {
  double value = std::numeric_limits<double>::infinity();
  MeasurementParams argmin{};
  int evals_used = 0;
  bool converged = false;
};

using Point4 = std::array<double, 4>;

/// Maps an arbitrary point back into the measurement chart: the three periodic
/// angles wrap into [-pi, pi], psi is clamped to [-pi/2, pi/2].
inline Point4 wrap_to_chart(Point4 x) {
  constexpr double pi = std::numbers::pi;
  for (int i = 0; i < 3; ++i) {
    double v = std::remainder(x[static_cast<std::size_t>(i)], 2 * pi);
    x[static_cast<std::size_t>(i)] = std::clamp(v, -pi, pi);
  }
  x[3] = std::clamp(x[3], -pi / 2, pi / 2);
  return x;
}

struct SimplexResult {
  Point4 best{};
  double value = std::numeric_limits<double>::infinity();
  int evals = 0;
  bool converged = false;
};

/// Nelder-Mead with coefficients (1, 2, 0.5, 0.5). Vertices live in unwrapped
/// coordinates; the objective always sees the point mapped into the chart.
/// Stops once the objective spread across the simplex is <= tol or the
/// evaluation budget is spent.
template <class F>
SimplexResult nelder_mead(F&& f, const Point4& start, const Point4& step, double tol, int budget) {
  constexpr std::size_t n = 4;
  constexpr double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

  SimplexResult res;
  if (budget < static_cast<int>(n) + 1) return res;

  std::array<Point4, n + 1> x{};
  std::array<double, n + 1> fx{};
  auto eval = [&](const Point4& p) {
    ++res.evals;
    return f(wrap_to_chart(p));
  };
  auto has_budget = [&] { return res.evals < budget; };
  auto along = [](const Point4& from, const Point4& to, double t) {
    Point4 p{};
    for (std::size_t k = 0; k < n; ++k) p[k] = from[k] + t * (to[k] - from[k]);
    return p;
  };

  x[0] = start;
  for (std::size_t i = 1; i <= n; ++i) {
    x[i] = start;
    x[i][i - 1] += step[i - 1];
  }
  for (std::size_t i = 0; i <= n; ++i) fx[i] = eval(x[i]);

  auto sort_simplex = [&] {
    std::array<std::size_t, n + 1> order{};
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    std::array<Point4, n + 1> xs{};
    std::array<double, n + 1> fs{};
    for (std::size_t i = 0; i <= n; ++i) xs[i] = x[order[i]], fs[i] = fx[order[i]];
    x = xs;
    fx = fs;
  };

  for (;;) {
    sort_simplex();
    if (fx[n] - fx[0] <= tol) {
      res.converged = true;
      break;
    }
    if (!has_budget()) break;

    Point4 centroid{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += x[i][k] / n;

    const Point4 xr = along(centroid, x[n], -reflect);
    const double fr = eval(xr);
    if (fr < fx[0]) {
      if (!has_budget()) {
        x[n] = xr, fx[n] = fr;
        continue;
      }
      const Point4 xe = along(centroid, xr, expand);
      const double fe = eval(xe);
      if (fe < fr) x[n] = xe, fx[n] = fe;
      else x[n] = xr, fx[n] = fr;
    } else if (fr < fx[n - 1]) {
      x[n] = xr, fx[n] = fr;
    } else {
      if (!has_budget()) break;
      const bool outside = fr < fx[n];
      const Point4 xc = along(centroid, outside ? xr : x[n], contract);
      const double fc = eval(xc);
      if (fc < (outside ? fr : fx[n])) {
        x[n] = xc, fx[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n && has_budget(); ++i) {
          x[i] = along(x[0], x[i], shrink);
          fx[i] = eval(x[i]);
        }
      }
    }
  }
  sort_simplex();
  res.best = wrap_to_chart(x[0]);
  res.value = fx[0];
  return res;
}

/// Minimizes an objective over the measurement parameter box.
///
/// A full grid over [-pi,pi]^3 x [-pi/2,pi/2] is evaluated first. If the
/// objective is flat on the grid (spread <= tolerance) the standard measurement
/// is returned. Otherwise Nelder-Mead refinement starts, in order, from the
/// standard measurement, the best grid point and `refinement_restarts` seeded
/// random points. Each refinement may use whatever budget is left.
template <class Objective>
OptimizeResult minimize_over_measurements(Objective&& objective, const OptimizerConfig& cfg) {
  cfg.validate();
  constexpr double pi = std::numbers::pi;
  const int n = cfg.grid_points_per_axis;

  OptimizeResult out;
  auto f = [&](const Point4& p) {
    ++out.evals_used;
    return static_cast<double>(objective(MeasurementParams::from_array(p)));
  };
  auto consider = [&](const Point4& p, double v) {
    if (v < out.value) {
      out.value = v;
      out.argmin = MeasurementParams::from_array(p);
    }
  };

  const Point4 origin{0.0, 0.0, 0.0, 0.0};
  const double f_origin = f(origin);
  consider(origin, f_origin);
  double grid_lo = f_origin, grid_hi = f_origin;
  Point4 grid_best = origin;
  double grid_best_value = f_origin;

  auto axis = [n](int i, double lim) { return -lim + 2.0 * lim * i / (n - 1); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const Point4 p{axis(a, pi), axis(b, pi), axis(c, pi), axis(d, pi / 2)};
          const double v = f(p);
          grid_lo = std::min(grid_lo, v);
          grid_hi = std::max(grid_hi, v);
          if (v < grid_best_value) grid_best_value = v, grid_best = p;
        }

  if (grid_hi - grid_lo <= cfg.simplex_tolerance) {
    out.value = f_origin;
    out.argmin = kStandardMeasurement;
    out.converged = true;
    return out;
  }
  consider(grid_best, grid_best_value);

  std::vector<Point4> starts{origin, grid_best};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(-pi, pi);
  std::uniform_real_distribution<double> half(-pi / 2, pi / 2);
  for (int r = 0; r < cfg.refinement_restarts; ++r) {
    const double t = angle(rng), p = angle(rng), c = angle(rng), s = half(rng);
    starts.push_back({t, p, c, s});
  }

  const double cell = 2.0 * pi / (n - 1);
  const Point4 step{cell / 2, cell / 2, cell / 2, cell / 4};
  std::vector<SimplexResult> runs;
  for (const Point4& s : starts) {
    const int budget = cfg.max_evals - out.evals_used;
    if (budget <= 4) break;
    runs.push_back(nelder_mead(f, s, step, cfg.simplex_tolerance, budget));
    consider(runs.back().best, runs.back().value);
  }
  // Converged when some refinement that met the simplex tolerance reached the
  // reported minimum.
  out.converged = std::any_of(runs.begin(), runs.end(), [&](const SimplexResult& r) {
    return r.converged && r.value <= out.value + cfg.simplex_tolerance;
  });
  return out;
}

}  // namespace qdiscord
