#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qdiscord/discord.hpp"
#include "qdiscord/states.hpp"
#include "qdiscord/verification/random_states.hpp"
#include "qdiscord/verification/reference_values.hpp"

using namespace qdiscord;

namespace {

// ||rho - P_A(rho)||_2^2 straight from the density matrix.
double direct_hs_sq(const DensityMatrix& rho, const MeasurementParams& m) {
  return (rho.matrix() - apply_measurement(rho, m).matrix()).squaredNorm();
}

}  // namespace

TEST(Disturbance, BellAtStandardMeasurement) {
  const DisturbanceSpectrum s = disturbance(to_bloch(bell()), kStandardMeasurement);
  EXPECT_NEAR(s.trace_norm, 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.hs_norm_sq, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.q_eigenvalues.sum(), s.hs_norm_sq, 1e-12);
  EXPECT_GE(s.q_eigenvalues.minCoeff(), 0.0);
}

TEST(Disturbance, HorodeckiAtStandardMeasurement) {
  for (int i = 0; i <= 10; ++i) {
    const double alpha = 0.5 * i;
    const DisturbanceObjective obj(horodecki(alpha));
    EXPECT_NEAR(obj.trace_norm(kStandardMeasurement), 8.0 / 21.0, 1e-12) << alpha;
    EXPECT_NEAR(1.5 * obj.hs_norm_sq(kStandardMeasurement), 4.0 / 49.0, 1e-12) << alpha;
  }
}

TEST(Disturbance, AlgebraicRouteMatchesDirectNorms) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = verification::random_state(rng);
    const DisturbanceObjective obj(rho);
    const MeasurementParams m = random_measurement(rng);
    EXPECT_LT(obj.oracle_residual(m), 1e-10);
    EXPECT_NEAR(obj.hs_norm_sq(m), direct_hs_sq(rho, m), 1e-12);
    // Clamping tiny eigenvalues of Q costs up to sqrt(clamp) each under the root.
    EXPECT_NEAR(trace_norm_psd(q_matrix(obj.r(m))), obj.trace_norm(m), 9 * std::sqrt(kSpectrumClamp));
  }
}

TEST(Disturbance, PsdSpectrumRejectsNegativeMatrices) {
  Matrix9c q = Matrix9c::Identity();
  q(0, 0) = -1e-3;
  EXPECT_THROW((void)psd_spectrum(q), std::domain_error);
  q(0, 0) = -1e-12;
  EXPECT_EQ(psd_spectrum(q)[0], 0.0);
}

TEST(Discord, Bell) {
  EXPECT_NEAR(d1(bell()).value, 1.0, 1e-9);
  EXPECT_NEAR(d2(bell()).value, 1.0, 1e-9);
  EXPECT_NEAR(negativity(bell()), 1.0, 1e-12);
}

TEST(Discord, WernerIsLinearInP) {
  for (double p : {0.0, 0.3, 0.7, 1.0}) {
    const DensityMatrix rho = werner(p);
    EXPECT_NEAR(d1(rho).value, p, 1e-9) << p;
    EXPECT_NEAR(d2(rho).value, p * p, 1e-9) << p;
    EXPECT_NEAR(negativity(rho), verification::werner_negativity(p), 1e-12) << p;
  }
}

TEST(Discord, AcFamily) {
  for (auto [a, c] : {std::pair{0.1, 0.2}, std::pair{0.3, 0.0}, std::pair{0.05, 0.05}}) {
    const DensityMatrix rho = ac_state(a, c);
    const double r = std::hypot(a, c);
    EXPECT_NEAR(d1(rho).value, 1.5 * r, 1e-9);
    EXPECT_NEAR(d2(rho).value, 3.0 * r * r, 1e-9);
    EXPECT_NEAR(negativity(rho), a + c, 1e-12);
  }
}

TEST(Discord, ClassicalQuantumStateHasNoDiscord) {
  // Mixture of |k><k| (x) sigma_k on A's standard basis.
  std::mt19937_64 rng(41);
  Matrix9c m = Matrix9c::Zero();
  for (int k = 0; k < 3; ++k) {
    Matrix3c ek = Matrix3c::Zero();
    ek(k, k) = 1.0;
    const Matrix3c g = verification::ginibre<Matrix3c>(rng);
    const Matrix3c sigma = g * g.adjoint() / (g * g.adjoint()).trace();
    m += (k + 1) / 6.0 * kron(ek, sigma);
  }
  const DensityMatrix rho = DensityMatrix::from_matrix(m);
  EXPECT_LT(d1(rho).value, 1e-9);
  EXPECT_LT(d2(rho).value, 1e-12);
  EXPECT_NEAR(negativity(rho), 0.0, 1e-13);
}

TEST(Discord, MaximallyMixed) {
  const DensityMatrix mixed = DensityMatrix::from_matrix(Matrix9c::Identity() / 9.0);
  const DiscordResult r = d1(mixed);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(constancy_gap(mixed, 50, 0), 0.0);
}

TEST(Discord, HorodeckiD1AndOuterD2) {
  for (double alpha : {0.0, 1.0, 4.0, 5.0}) {
    const DensityMatrix rho = horodecki(alpha);
    const DiscordResult r1 = d1(rho), r2 = d2(rho);
    EXPECT_NEAR(r1.value, 2.0 / 7.0, 1e-9) << alpha;
    EXPECT_NEAR(r2.value, 4.0 / 49.0, 1e-9) << alpha;
    EXPECT_LT(r1.oracle_residual, 1e-10);
    EXPECT_NEAR(negativity(rho), verification::horodecki_negativity(alpha), 1e-12) << alpha;
  }
}

TEST(Discord, HorodeckiD2RespectsLowerBound) {
  for (double alpha : {1.5, 2.5, 3.5}) {
    const double v = d2(horodecki(alpha)).value;
    EXPECT_GE(v, verification::horodecki_d2_lower_bound(alpha) - 1e-9) << alpha;
    EXPECT_LE(v, 4.0 / 49.0 + 1e-12) << alpha;
  }
}

TEST(Constancy, WernerFlatAcNot) {
  EXPECT_LT(constancy_gap(werner(0.7), 200, 1), 1e-9);
  EXPECT_GT(constancy_gap(ac_state(0.3, 0.0), 200, 1), 1e-3);
}

TEST(Negativity, PartialTransposeIsInvolution) {
  std::mt19937_64 rng(51);
  const Matrix9c m = verification::random_state(rng).matrix();
  EXPECT_EQ((partial_transpose_b(partial_transpose_b(m)) - m).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NEAR(partial_transpose_b(m).trace().real(), 1.0, 1e-14);
}

TEST(Negativity, TraceNormDefinition) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix rho = verification::random_state(rng);
    Eigen::SelfAdjointEigenSolver<Matrix9c> es(partial_transpose_b(rho.matrix()));
    const double n = 0.5 * (es.eigenvalues().cwiseAbs().sum() - 1.0);
    EXPECT_NEAR(negativity(rho), n, 1e-12);
  }
}

TEST(SingularValues, HorodeckiClosedForm) {
  for (int i = 0; i <= 10; ++i) {
    const double alpha = 0.5 * i;
    const Vector8r s = t_singular_values(to_bloch(horodecki(alpha)).t);
    const auto ref = verification::horodecki_singular_values(alpha);
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(s[k], ref[static_cast<std::size_t>(k)], 1e-12) << alpha;
  }
}
