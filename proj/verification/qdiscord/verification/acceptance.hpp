#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qdiscord/bloch.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/io.hpp"
#include "qdiscord/measure.hpp"
#include "qdiscord/run.hpp"
#include "qdiscord/states.hpp"
#include "qdiscord/su_basis.hpp"
#include "qdiscord/verification/random_states.hpp"
#include "qdiscord/verification/reference_values.hpp"

namespace qdiscord::verification {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 0;
  OptimizerConfig optimizer{};
  /// Stored Werner sweep fixture; the golden-file check fails if it is missing.
  std::string golden_csv_path;
  /// CLI executable used to confirm `verify` exits 0. Empty skips that half of
  /// the CLI contract (the `verify` command itself cannot re-run itself).
  std::string cli_path;
};

/// The acceptance criteria, each run against an injectable basis.
class AcceptanceSuite {
 public:
  AcceptanceSuite(const GellMannBasis& basis, AcceptanceOptions opts)
      : basis_(basis), opts_(std::move(opts)) {}

  std::vector<CheckResult> run_all() {
    return {bell_exactness(),      werner_linearity(),       constancy(),
            ac_family(),           bound_entangled_family(), d2_lower_bound(),
            singular_values(),     oracle_equivalence(),     superoperator_algebra(),
            basis_conformance(),   hierarchy(),              cli_contract()};
  }

  CheckResult bell_exactness() {
    CheckResult c{1, "Bell exactness", true, {}};
    const DensityMatrix rho = bell();
    const DiscordResult r = d1(rho, opts_.optimizer, basis_);
    note_hierarchy("bell", r.value, negativity(rho));
    const Vector9r sp = disturbance(to_bloch(rho, basis_), kStandardMeasurement, basis_).q_eigenvalues;
    Vector9r expect = Vector9r::Zero();
    expect[6] = expect[7] = 1.0 / 9.0;
    expect[8] = 4.0 / 9.0;
    const double d1_err = std::abs(r.value - 1.0);
    const double sp_err = (sp - expect).cwiseAbs().maxCoeff();
    c.passed = d1_err < 1e-9 && sp_err < 1e-10;
    c.detail = "|D1-1|=" + fmt(d1_err) + " spectrum err=" + fmt(sp_err);
    return c;
  }

  CheckResult werner_linearity() {
    CheckResult c{2, "Werner linearity", true, {}};
    double worst1 = 0.0, worst2 = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double p = i / 10.0;
      const DensityMatrix rho = werner(p);
      const double v1 = d1(rho, opts_.optimizer, basis_).value;
      const double v2 = d2(rho, opts_.optimizer, basis_).value;
      note_hierarchy("werner p=" + fmt(p), v1, negativity(rho));
      worst1 = std::max(worst1, std::abs(v1 - p));
      worst2 = std::max(worst2, std::abs(v2 - p * p));
    }
    c.passed = worst1 < 1e-7 && worst2 < 1e-7;
    c.detail = "max|D1-p|=" + fmt(worst1) + " max|D2-p^2|=" + fmt(worst2);
    return c;
  }

  CheckResult constancy() {
    CheckResult c{3, "Constancy of disturbance", true, {}};
    constexpr int samples = 200;
    const std::vector<std::pair<DensityMatrix, double>> cases{{bell(), 1.5}, {werner(0.7), 1.5 * 0.7}};
    double worst_gap = 0.0, worst_trq = 0.0;
    for (const auto& [rho, t] : cases) {
      worst_gap = std::max(worst_gap, constancy_gap(rho, samples, opts_.seed, basis_));
      const DisturbanceObjective obj(rho, basis_);
      std::mt19937_64 rng(opts_.seed);
      const double expect = std::pow(2.0 / 3.0, 3) * t * t;
      for (int s = 0; s < samples; ++s)
        worst_trq = std::max(worst_trq, std::abs(obj.hs_norm_sq(random_measurement(rng)) - expect));
    }
    c.passed = worst_gap < 1e-9 && worst_trq < 1e-10;
    c.detail = "max gap=" + fmt(worst_gap) + " max|trQ-(2/3)^3 t^2|=" + fmt(worst_trq);
    return c;
  }

  CheckResult ac_family() {
    CheckResult c{4, "(a,c) family", true, {}};
    std::mt19937_64 rng(opts_.seed + 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_d1 = 0.0, worst_n = 0.0, min_margin = INFINITY;
    for (int i = 0; i < 20; ++i) {
      const double r = std::sqrt(unit(rng)) / 3.0;
      const double th = unit(rng) * std::numbers::pi / 2;
      const double a = r * std::cos(th), cc = r * std::sin(th);
      const DensityMatrix rho = ac_state(a, cc);
      const double v1 = d1(rho, opts_.optimizer, basis_).value;
      const double n = negativity(rho);
      note_hierarchy("ac a=" + fmt(a) + " c=" + fmt(cc), v1, n);
      worst_d1 = std::max(worst_d1, std::abs(v1 - 1.5 * std::sqrt(a * a + cc * cc)));
      worst_n = std::max(worst_n, std::abs(n - (a + cc)));
      min_margin = std::min(min_margin, v1 - n);
    }
    c.passed = worst_d1 < 1e-6 && worst_n < 1e-10 && min_margin > 0.0;
    c.detail = "max|D1-1.5r|=" + fmt(worst_d1) + " max|N-(a+c)|=" + fmt(worst_n) +
               " min(D1-N)=" + fmt(min_margin);
    return c;
  }

  CheckResult bound_entangled_family() {
    CheckResult c{5, "Bound entangled family", true, {}};
    double worst_d1 = 0.0, worst_d2 = 0.0, worst_n = 0.0;
    std::string d2_misses;
    for (const auto& h : horodecki_grid()) {
      worst_d1 = std::max(worst_d1, std::abs(h.d1 - 2.0 / 7.0));
      const double e2 = std::abs(h.d2 - 4.0 / 49.0);
      worst_d2 = std::max(worst_d2, e2);
      if (e2 >= 1e-6) d2_misses += " a=" + fmt(h.alpha) + ":D2=" + fmt(h.d2);
      double en = std::abs(h.negativity - horodecki_negativity(h.alpha));
      if (h.alpha > 1.0 && h.alpha < 4.0 && h.negativity != 0.0) en = std::max(en, 1.0);
      worst_n = std::max(worst_n, en);
    }
    c.passed = worst_d1 < 1e-6 && worst_d2 < 1e-6 && worst_n < 1e-10;
    c.detail = "max|D1-2/7|=" + fmt(worst_d1) + " max|D2-4/49|=" + fmt(worst_d2) +
               " max|N-closed form|=" + fmt(worst_n);
    if (!d2_misses.empty()) c.detail += " D2 below 4/49 at" + d2_misses;
    return c;
  }

  CheckResult d2_lower_bound() {
    CheckResult c{6, "D2 lower-bound consistency", true, {}};
    double worst_outer = 0.0, worst_bound_violation = 0.0;
    for (const auto& h : horodecki_grid()) {
      if (horodecki_outer_range(h.alpha))
        worst_outer = std::max(worst_outer, std::abs(h.d2 - 4.0 / 49.0));
      worst_bound_violation =
          std::max(worst_bound_violation, horodecki_d2_lower_bound(h.alpha) - h.d2);
    }
    c.passed = worst_outer < 1e-6 && worst_bound_violation < 1e-9;
    c.detail = "outer-range max|D2-4/49|=" + fmt(worst_outer) +
               " max(bound-D2)=" + fmt(worst_bound_violation);
    return c;
  }

  CheckResult singular_values() {
    CheckResult c{7, "Correlation-matrix singular values", true, {}};
    double worst = 0.0, most_negative = INFINITY;
    for (int i = 0; i <= 10; ++i) {
      const double alpha = 0.5 * i;
      const BlochForm b = to_bloch(horodecki(alpha), basis_);
      const Vector8r s = t_singular_values(b.t);
      const auto expect = horodecki_singular_values(alpha);
      for (int k = 0; k < 8; ++k)
        worst = std::max(worst, std::abs(s[k] - expect[static_cast<std::size_t>(k)]));
      BlochForm diag;
      diag.t = s.asDiagonal();
      most_negative = std::min(most_negative, is_state(from_bloch(diag, basis_)).min_eigenvalue);
    }
    c.passed = worst < 1e-10 && most_negative < -1e-6;
    c.detail = "max sv err=" + fmt(worst) + " most negative eigenvalue of diagonal rebuild=" +
               fmt(most_negative);
    return c;
  }

  CheckResult oracle_equivalence() {
    CheckResult c{8, "Oracle equivalence", true, {}};
    std::mt19937_64 rng(opts_.seed + 8);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const DensityMatrix rho = random_state(rng);
      const MeasurementParams m = random_measurement(rng);
      const DisturbanceObjective obj(rho, basis_);
      worst = std::max(worst, obj.oracle_residual(m));
    }
    c.passed = worst < 1e-9;
    c.detail = "max|algebraic-direct|=" + fmt(worst);
    return c;
  }

  CheckResult superoperator_algebra() {
    CheckResult c{9, "Superoperator algebra", true, {}};
    std::mt19937_64 rng(opts_.seed + 9);
    const Vector8r eps = sign_pattern();
    double sym = 0.0, idem = 0.0, trace = 0.0, star_m = 0.0, star_imi = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const MeasurementParams m = random_measurement(rng);
      const Matrix8r a = superop_A(m, basis_);
      const Matrix8r mm = Matrix8r::Identity() - a;
      sym = std::max(sym, (a - a.transpose()).cwiseAbs().maxCoeff());
      idem = std::max(idem, (a * a - a).cwiseAbs().maxCoeff());
      trace = std::max(trace, std::abs(mm.trace() - 6.0));
      const Matrix8r imi = eps.asDiagonal() * mm * eps.asDiagonal();
      VectorXr s1 = VectorXr::Zero(8), s2 = VectorXr::Zero(8);
      for (int k = 0; k < 8; ++k) {
        const VectorXr col = mm.col(k);
        s1 += basis_.star(col, col);
        s2 += basis_.star(VectorXr(imi.col(k)), VectorXr(Vector8r::Unit(k)));
      }
      star_m = std::max(star_m, s1.cwiseAbs().maxCoeff());
      star_imi = std::max(star_imi, s2.cwiseAbs().maxCoeff());
    }
    c.passed = sym < 1e-12 && idem < 1e-10 && trace < 1e-10 && star_m < 1e-10 && star_imi < 1e-10;
    c.detail = "|A-A^T|=" + fmt(sym) + " |A^2-A|=" + fmt(idem) + " |trM-6|=" + fmt(trace) +
               " |sum Me*Me|=" + fmt(star_m) + " |sum IMIe*e|=" + fmt(star_imi);
    return c;
  }

  CheckResult basis_conformance() {
    CheckResult c{10, "Basis conformance", true, {}};
    double product = 0.0;
    const int n = basis_.size();
    const MatrixXc id = MatrixXc::Identity(basis_.dim(), basis_.dim());
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        MatrixXc rhs = (j == k ? 2.0 / basis_.dim() : 0.0) * id;
        for (int l = 0; l < n; ++l)
          rhs += complex_t{basis_.struct_d(j, k, l), basis_.struct_f(j, k, l)} * basis_.generator(l);
        product = std::max(product,
                           (basis_.generator(j) * basis_.generator(k) - rhs).cwiseAbs().maxCoeff());
      }
    double round_trip = 0.0;
    for (const DensityMatrix& rho : catalog_states())
      round_trip = std::max(
          round_trip, (from_bloch(to_bloch(rho, basis_), basis_) - rho.matrix()).cwiseAbs().maxCoeff());
    std::mt19937_64 rng(opts_.seed + 10);
    int pure_ok = 0, mixed_rejected = 0;
    for (int i = 0; i < 10; ++i) {
      if (purity_conditions(random_pure_qutrit_bloch(rng, basis_), basis_).pure()) ++pure_ok;
      if (!purity_conditions(random_mixed_qutrit_bloch(rng, basis_), basis_).pure()) ++mixed_rejected;
    }
    c.passed = product < 1e-12 && round_trip < 1e-12 && pure_ok == 10 && mixed_rejected == 10;
    c.detail = "product identity residual=" + fmt(product) + " round trip=" + fmt(round_trip) +
               " pure accepted " + std::to_string(pure_ok) + "/10, mixed rejected " +
               std::to_string(mixed_rejected) + "/10";
    return c;
  }

  /// D1 >= N over every state the suite has evaluated so far.
  CheckResult hierarchy() {
    CheckResult c{11, "Hierarchy D1 >= N", true, {}};
    if (hierarchy_.empty()) {
      // Run standalone: evaluate part of the catalog directly.
      (void)horodecki_grid();
      note_hierarchy("bell", d1(bell(), opts_.optimizer, basis_).value, negativity(bell()));
    }
    double worst = INFINITY;
    std::string where;
    for (const auto& [label, d, n] : hierarchy_) {
      if (d - n < worst) worst = d - n, where = label;
    }
    c.passed = worst >= -1e-12;
    c.detail = std::to_string(hierarchy_.size()) + " states, min(D1-N)=" + fmt(worst) + " at " + where;
    return c;
  }

  CheckResult cli_contract() {
    CheckResult c{12, "CLI contract", true, {}};
    std::ostringstream produced;
    io::write_csv(produced, sweep(FamilySpec{Family::werner, {}}, "p", 0.0, 1.0, 0.1, golden_config()));
    std::ifstream in(opts_.golden_csv_path, std::ios::binary);
    const bool found = in.is_open();
    const std::string stored{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    const bool golden = found && stored == produced.str();
    c.detail = golden ? "golden Werner CSV matches" : "golden Werner CSV differs or is missing";
    bool verify_ok = true;
    if (!opts_.cli_path.empty()) {
      const std::string cmd = "\"" + opts_.cli_path + "\" verify > /dev/null 2>&1";
      verify_ok = std::system(cmd.c_str()) == 0;
      c.detail += verify_ok ? "; verify exited 0" : "; verify exited nonzero";
    } else {
      c.detail += "; verify exit status not checked in-process";
    }
    c.passed = golden && verify_ok;
    return c;
  }

  /// Optimizer settings the golden fixture was produced with (`--seed 0`).
  static OptimizerConfig golden_config() { return OptimizerConfig{}; }

  static Vector8r sign_pattern() {
    Vector8r eps;
    eps << 1, -1, 1, 1, -1, 1, -1, 1;
    return eps;
  }

 private:
  struct HorodeckiPoint {
    double alpha, d1, d2, negativity;
  };

  const std::vector<HorodeckiPoint>& horodecki_grid() {
    if (horodecki_.empty()) {
      for (int i = 0; i <= 10; ++i) {
        const double alpha = 0.5 * i;
        const DensityMatrix rho = horodecki(alpha);
        HorodeckiPoint h{alpha, d1(rho, opts_.optimizer, basis_).value,
                         d2(rho, opts_.optimizer, basis_).value, negativity(rho)};
        note_hierarchy("horodecki alpha=" + fmt(alpha), h.d1, h.negativity);
        horodecki_.push_back(h);
      }
    }
    return horodecki_;
  }

  static std::vector<DensityMatrix> catalog_states() {
    std::vector<DensityMatrix> out{bell(), werner(0.0), werner(0.3), werner(0.7), ac_state(0.0, 0.0),
                                   ac_state(0.2, 0.1), ac_state(1.0 / 3.0, 0.0)};
    for (int i = 0; i <= 10; ++i) out.push_back(horodecki(0.5 * i));
    return out;
  }

  void note_hierarchy(std::string label, double d, double n) {
    hierarchy_.push_back({std::move(label), d, n});
  }

  static std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
  }

  struct HierarchyEntry {
    std::string label;
    double d1, negativity;
  };

  const GellMannBasis& basis_;
  AcceptanceOptions opts_;
  std::vector<HorodeckiPoint> horodecki_;
  std::vector<HierarchyEntry> hierarchy_;
};

}  // namespace qdiscord::verification
