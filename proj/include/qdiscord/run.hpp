#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qdiscord/discord.hpp"
#include "qdiscord/states.hpp"

namespace qdiscord {

/// All three measures for one state, plus optimizer diagnostics for D1.
struct RunRecord {
  FamilySpec spec;
  std::string param_name;   // swept (or primary) parameter, empty if none
  double param_value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double negativity = 0.0;
  MeasurementParams argmin{};   // D1 minimizer
  double oracle_residual = 0.0;
  bool converged = false;       // both D1 and D2 minimizations converged
  double wall_time = 0.0;       // seconds
};

/// Primary parameter reported in tabular output when nothing is swept.
inline std::string primary_param(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::werner: return "p";
    case Family::horodecki: return "alpha";
    case Family::ac: return spec.get("r") ? "r" : "a";
    default: return {};
  }
}

inline RunRecord evaluate(const DensityMatrix& rho, const FamilySpec& spec, const OptimizerConfig& cfg,
                          const std::string& param_name) {
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.spec = spec;
  rec.param_name = param_name;
  if (!param_name.empty()) rec.param_value = spec.get(param_name).value_or(0.0);
  const DiscordResult r1 = d1(rho, cfg);
  const DiscordResult r2 = d2(rho, cfg);
  rec.d1 = r1.value;
  rec.d2 = r2.value;
  rec.negativity = negativity(rho);
  rec.argmin = r1.argmin;
  rec.oracle_residual = r1.oracle_residual;
  rec.converged = r1.converged && r2.converged;
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

inline RunRecord evaluate(const FamilySpec& spec, const OptimizerConfig& cfg) {
  return evaluate(make_state(spec), spec, cfg, primary_param(spec));
}

/// Grid from..to (inclusive) with the given step; the last point is clamped to `to`.
inline std::vector<double> sweep_grid(double from, double to, double step) {
  if (!(step > 0.0) || !std::isfinite(from) || !std::isfinite(to) || to < from)
    throw std::invalid_argument("sweep: need finite from <= to and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(std::min(from + static_cast<double>(i) * step, to));
  return grid;
}

/// Evaluates `base` with `param` set to every grid value. Points run
/// concurrently when hardware threads are available; the output order always
/// follows the grid.
inline std::vector<RunRecord> sweep(const FamilySpec& base, const std::string& param, double from,
                                    double to, double step, const OptimizerConfig& cfg) {
  if (base.family == Family::file || base.family == Family::bell)
    throw std::invalid_argument("sweep: family '" + std::string(family_name(base.family)) +
                                "' has no sweepable parameter");
  const std::vector<double> grid = sweep_grid(from, to, step);
  std::vector<FamilySpec> specs;
  for (double v : grid) {
    FamilySpec s = base;
    s.params[param] = v;
    specs.push_back(s);
  }
  // Reject the whole range up front if either end leaves the family domain.
  (void)make_state(specs.front());
  (void)make_state(specs.back());

  std::vector<RunRecord> out(specs.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < specs.size(); begin += workers) {
    const std::size_t end = std::min(specs.size(), begin + workers);
    if (workers == 1) {
      out[begin] = evaluate(make_state(specs[begin]), specs[begin], cfg, param);
      continue;
    }
    std::vector<std::future<RunRecord>> batch;
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(std::launch::async, [&, i] {
        return evaluate(make_state(specs[i]), specs[i], cfg, param);
      }));
    for (std::size_t i = begin; i < end; ++i) out[i] = batch[i - begin].get();
  }
  return out;
}

}  // namespace qdiscord
