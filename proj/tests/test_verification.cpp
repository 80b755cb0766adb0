#include <gtest/gtest.h>

#include "qdiscord/verification/acceptance.hpp"

using namespace qdiscord;

TEST(Verification, BasisConformancePassesOnTheRealBasis) {
  verification::AcceptanceSuite suite(qutrit_basis(), {});
  EXPECT_TRUE(suite.basis_conformance().passed);
}

TEST(Verification, CorruptedStructureConstantsAreCaught) {
  const GellMannBasis& b = qutrit_basis();
  std::vector<double> sym = b.sym_table();
  // Perturb d_118 and its symmetric partners.
  for (double& v : sym)
    if (std::abs(v - 1.0 / std::sqrt(3.0)) < 1e-12) v *= 1.01;
  const GellMannBasis broken = GellMannBasis::from_parts(3, b.generators(), sym, b.antisym_table());
  verification::AcceptanceSuite suite(broken, {});
  const verification::CheckResult r = suite.basis_conformance();
  EXPECT_FALSE(r.passed) << r.detail;
}

TEST(Verification, CorruptedAntisymmetricConstantsBreakSuperoperatorAlgebra) {
  const GellMannBasis& b = qutrit_basis();
  std::vector<double> anti = b.antisym_table();
  for (double& v : anti) v = -v;
  const GellMannBasis broken = GellMannBasis::from_parts(3, b.generators(), b.sym_table(), anti);
  verification::AcceptanceSuite suite(broken, {});
  EXPECT_FALSE(suite.basis_conformance().passed);
}

TEST(Verification, MissingGoldenFileFailsCliContract) {
  verification::AcceptanceOptions opts;
  opts.golden_csv_path = "/nonexistent/golden.csv";
  verification::AcceptanceSuite suite(qutrit_basis(), opts);
  EXPECT_FALSE(suite.cli_contract().passed);
}
