// Command-line front end: compute, sweep and verify.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qdiscord/qdiscord.hpp"
#include "qdiscord/verification/acceptance.hpp"

#ifndef QDISCORD_DEFAULT_FIXTURE
#define QDISCORD_DEFAULT_FIXTURE ""
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConvergence = 2;

struct StateFlags {
  std::string family;
  std::optional<double> p, a, c, r, theta, alpha;
  std::string file;
};

struct OutputFlags {
  std::string output;
  std::string format;
};

void add_state_flags(CLI::App& cmd, StateFlags& s) {
  cmd.add_option("--family", s.family, "State family: bell, werner, ac, horodecki")
      ->check(CLI::IsMember({"bell", "werner", "ac", "horodecki"}));
  cmd.add_option("--p", s.p, "Werner mixing weight p in [0, 1]");
  cmd.add_option("--a", s.a, "(a,c) family coupling a");
  cmd.add_option("--c", s.c, "(a,c) family coupling c");
  cmd.add_option("--r", s.r, "(a,c) family radius r in [0, 1/3]");
  cmd.add_option("--theta-param", s.theta, "(a,c) family polar angle in [0, pi/2]");
  cmd.add_option("--alpha", s.alpha, "Horodecki family alpha in [0, 5]");
}

void add_optimizer_flags(CLI::App& cmd, qdiscord::OptimizerConfig& cfg) {
  cmd.add_option("--grid", cfg.grid_points_per_axis, "Grid points per parameter axis")
      ->capture_default_str();
  cmd.add_option("--restarts", cfg.refinement_restarts, "Random simplex restarts")
      ->capture_default_str();
  cmd.add_option("--tol", cfg.simplex_tolerance, "Simplex objective-spread tolerance")
      ->capture_default_str();
  cmd.add_option("--max-evals", cfg.max_evals, "Objective evaluation budget")->capture_default_str();
  cmd.add_option("--seed", cfg.seed, "Seed for randomized restarts")->capture_default_str();
}

qdiscord::FamilySpec to_spec(const StateFlags& s) {
  qdiscord::FamilySpec spec;
  spec.family = qdiscord::parse_family(s.family);
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) spec.params[key] = *v;
  };
  put("p", s.p);
  put("a", s.a);
  put("c", s.c);
  put("r", s.r);
  put("theta", s.theta);
  put("alpha", s.alpha);
  return spec;
}

void emit(const std::vector<qdiscord::RunRecord>& records, const OutputFlags& out) {
  std::ofstream file;
  if (!out.output.empty()) {
    file.open(out.output, std::ios::binary);
    if (!file) throw qdiscord::io::format_error("cannot write '" + out.output + "'");
  }
  std::ostream& os = out.output.empty() ? std::cout : file;
  if (out.format == "csv") {
    qdiscord::io::write_csv(os, records);
  } else if (out.format == "table") {
    qdiscord::io::write_table(os, records);
  } else if (records.size() == 1) {
    os << qdiscord::io::to_json(records.front()).dump(2) << '\n';
  } else {
    auto arr = qdiscord::io::json::array();
    for (const auto& r : records) arr.push_back(qdiscord::io::to_json(r));
    os << arr.dump(2) << '\n';
  }
}

int all_converged(const std::vector<qdiscord::RunRecord>& records) {
  for (const auto& r : records)
    if (!r.converged) return kExitConvergence;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-norm geometric discord of two-qutrit states"};
  app.require_subcommand(1);

  StateFlags state;
  OutputFlags output;
  qdiscord::OptimizerConfig cfg;

  CLI::App* compute = app.add_subcommand("compute", "Compute D1, D2 and negativity for one state");
  add_state_flags(*compute, state);
  compute->add_option("--file", state.file, "JSON state file {\"dim\": 9, \"matrix\": [[[re, im]...]]}");
  add_optimizer_flags(*compute, cfg);
  compute->add_option("--output", output.output, "Write output here instead of stdout");
  output.format = "json";
  compute->add_option("--format", output.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();

  std::string sweep_param;
  double from = 0.0, to = 0.0, step = 0.0;
  OutputFlags sweep_output;
  sweep_output.format = "csv";
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one family parameter over a grid");
  add_state_flags(*sweep, state);
  sweep->add_option("--param", sweep_param, "Swept parameter: p, a, c, r, theta-param, alpha")
      ->required();
  sweep->add_option("--from", from, "First grid value")->required();
  sweep->add_option("--to", to, "Last grid value (inclusive)")->required();
  sweep->add_option("--step", step, "Grid step")->required();
  add_optimizer_flags(*sweep, cfg);
  sweep->add_option("--output", sweep_output.output, "Write output here instead of stdout");
  sweep->add_option("--format", sweep_output.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();

  std::uint64_t verify_seed = 0;
  std::string fixture = QDISCORD_DEFAULT_FIXTURE;
  CLI::App* verify = app.add_subcommand("verify", "Run the acceptance checks; exit code = failures");
  verify->add_option("--seed", verify_seed, "Seed for sampled checks")->capture_default_str();
  verify->add_option("--fixture", fixture, "Golden Werner sweep CSV")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*compute) {
      if (!state.file.empty() == !state.family.empty()) {
        std::cerr << "compute: give exactly one of --family or --file\n";
        return kExitValidation;
      }
      qdiscord::RunRecord rec;
      if (!state.file.empty()) {
        const qdiscord::DensityMatrix rho = qdiscord::io::load_state(state.file);
        rec = qdiscord::evaluate(rho, qdiscord::FamilySpec{qdiscord::Family::file, {}}, cfg, "");
      } else {
        rec = qdiscord::evaluate(to_spec(state), cfg);
      }
      emit({rec}, output);
      return all_converged({rec});
    }
    if (*sweep) {
      if (state.family.empty()) {
        std::cerr << "sweep: --family is required\n";
        return kExitValidation;
      }
      const std::string key = sweep_param == "theta-param" ? "theta" : sweep_param;
      const auto records = qdiscord::sweep(to_spec(state), key, from, to, step, cfg);
      emit(records, sweep_output);
      return all_converged(records);
    }
    if (*verify) {
      qdiscord::verification::AcceptanceOptions opts;
      opts.seed = verify_seed;
      opts.golden_csv_path = fixture;
      qdiscord::verification::AcceptanceSuite suite(qdiscord::qutrit_basis(), opts);
      int failures = 0;
      for (const auto& c : suite.run_all()) {
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": " << c.detail
                  << '\n';
        if (!c.passed) ++failures;
      }
      std::cout << failures << " failure(s)\n";
      return failures;
    }
  } catch (const qdiscord::invalid_state& e) {
    std::cerr << "invalid state: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
