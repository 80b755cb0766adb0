#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qdiscord/bloch.hpp"
#include "qdiscord/measure.hpp"
#include "qdiscord/optimize.hpp"
#include "qdiscord/su_basis.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord {

/// Eigenvalues of Q with magnitude below this are treated as exact zeros.
inline constexpr double kSpectrumClamp = 1e-10;

/// Normalization making the Bell state score 1: D1 = (3/4) min ||rho - P_A(rho)||_1.
inline constexpr double kTraceNormScale = 0.75;
/// D2 = (3/2) min ||rho - P_A(rho)||_2^2.
inline constexpr double kHilbertSchmidtScale = 1.5;

/// rho - P_A(rho) assembled from the Bloch form:
/// R(M) = (1/9)[ d'' <Mx,lambda> x I + sum_jk T_jk <M e_j,lambda> x <e_k,lambda> ].
inline Matrix9c r_matrix(const BlochForm& b, const Matrix8r& m, const GellMannBasis& basis = qutrit_basis()) {
  require_qutrit(basis, "r_matrix");
  const auto lam = detail::generators3(basis);
  Matrix9c r = basis.d_dprime() * kron(qutrit_expand(basis, m * b.x), Matrix3c::Identity());
  // sum_j T_jk M e_j = M T e_k, so one expansion per column of T.
  const Matrix8r mt = m * b.t;
  for (int k = 0; k < kBlochDim; ++k) {
    const Vector8r col = mt.col(k);
    if (col.isZero(0.0)) continue;
    r += kron(qutrit_expand(basis, col), lam[static_cast<std::size_t>(k)]);
  }
  return r / 9.0;
}

/// Q(M) = R(M) R(M)^*
inline Matrix9c q_matrix(const Matrix9c& r) { return r * r.adjoint(); }

/// Eigenvalues of a PSD matrix in ascending order, with round-off below
/// kSpectrumClamp set to zero. Throws if an eigenvalue is below -kSpectrumClamp.
inline Vector9r psd_spectrum(const Matrix9c& q) {
  Eigen::SelfAdjointEigenSolver<Matrix9c> solver(0.5 * (q + q.adjoint()), Eigen::EigenvaluesOnly);
  Vector9r ev = solver.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] < -kSpectrumClamp)
      throw std::domain_error("psd_spectrum: eigenvalue " + std::to_string(ev[i]) +
                              " below -1e-10; matrix is not positive semidefinite");
    if (std::abs(ev[i]) < kSpectrumClamp) ev[i] = 0.0;
  }
  return ev;
}

/// tr sqrt(Q) = sum_i sqrt(q_i) over the clamped spectrum.
inline double trace_norm_psd(const Matrix9c& q) {
  const Vector9r ev = psd_spectrum(q);
  double acc = 0.0;
  for (int i = 0; i < ev.size(); ++i) acc += std::sqrt(ev[i]);
  return acc;
}

/// tr sqrt(R R^*) evaluated as the sum of singular values of R.
///
/// Square roots of Q's eigenvalues lose half the significant digits for the
/// (frequent) zero eigenvalues, e.g. 1e-18 round-off turns into 1e-9. R is
/// Hermitian, so its singular values are the moduli of its eigenvalues.
inline double trace_norm_hermitian(const Matrix9c& r) {
  Eigen::SelfAdjointEigenSolver<Matrix9c> solver(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

/// ||rho - P_A(rho)||_1 by the direct route: pinch rho and diagonalize the
/// difference. Independent of the Bloch machinery; serves as the oracle.
inline double direct_trace_norm(const Matrix9c& rho, const ProjectorTriple& proj) {
  return trace_norm_hermitian(rho - measure_local(proj, rho));
}

inline double direct_trace_norm(const DensityMatrix& rho, const MeasurementParams& m) {
  return direct_trace_norm(rho.matrix(), projectors(m));
}

struct DisturbanceSpectrum {
  Vector9r q_eigenvalues = Vector9r::Zero();   // ascending, clamped
  double trace_norm = 0.0;
  double hs_norm_sq = 0.0;                     // tr Q(M)
  MeasurementParams params{};
};

/// Q(M) spectrum and norms at one measurement, all through the Bloch route.
inline DisturbanceSpectrum disturbance(const BlochForm& b, const MeasurementParams& m,
                                       const GellMannBasis& basis = qutrit_basis()) {
  const Matrix9c r = r_matrix(b, superop_M(m, basis), basis);
  DisturbanceSpectrum out;
  out.q_eigenvalues = psd_spectrum(q_matrix(r));
  out.trace_norm = trace_norm_hermitian(r);
  out.hs_norm_sq = r.squaredNorm();
  out.params = m;
  return out;
}

/// Objective evaluator with the state-dependent Bloch data precomputed.
class DisturbanceObjective {
 public:
  explicit DisturbanceObjective(const DensityMatrix& rho, const GellMannBasis& basis = qutrit_basis())
      : basis_(&basis), rho_(rho.matrix()), bloch_(to_bloch(rho, basis)) {}

  Matrix9c r(const MeasurementParams& m) const {
    return r_matrix(bloch_, superop_M(m, *basis_), *basis_);
  }
  /// tr sqrt(Q(M)) along the algebraic route.
  double trace_norm(const MeasurementParams& m) const { return trace_norm_hermitian(r(m)); }
  /// tr Q(M) = ||R(M)||_2^2.
  double hs_norm_sq(const MeasurementParams& m) const { return r(m).squaredNorm(); }
  /// |algebraic - direct| for the trace norm at m.
  double oracle_residual(const MeasurementParams& m) const {
    return std::abs(trace_norm(m) - direct_trace_norm(rho_, projectors(m)));
  }

  const BlochForm& bloch() const noexcept { return bloch_; }

 private:
  const GellMannBasis* basis_;
  Matrix9c rho_;
  BlochForm bloch_;
};

struct DiscordResult {
  double value = 0.0;            // normalized measure
  double raw_minimum = 0.0;      // unnormalized minimum of the objective
  MeasurementParams argmin{};
  int evals_used = 0;
  bool converged = false;
  double oracle_residual = 0.0;  // |algebraic - direct| trace norm at argmin
};

/// Normalized trace-norm geometric discord D1.
inline DiscordResult d1(const DensityMatrix& rho, const OptimizerConfig& cfg = {},
                        const GellMannBasis& basis = qutrit_basis()) {
  const DisturbanceObjective obj(rho, basis);
  const OptimizeResult opt =
      minimize_over_measurements([&](const MeasurementParams& m) { return obj.trace_norm(m); }, cfg);
  DiscordResult out;
  out.raw_minimum = opt.value;
  out.value = kTraceNormScale * opt.value;
  out.argmin = opt.argmin;
  out.evals_used = opt.evals_used;
  out.converged = opt.converged;
  out.oracle_residual = obj.oracle_residual(opt.argmin);
  return out;
}

/// Hilbert-Schmidt geometric discord D2, minimized on its own objective.
inline DiscordResult d2(const DensityMatrix& rho, const OptimizerConfig& cfg = {},
                        const GellMannBasis& basis = qutrit_basis()) {
  const DisturbanceObjective obj(rho, basis);
  const OptimizeResult opt =
      minimize_over_measurements([&](const MeasurementParams& m) { return obj.hs_norm_sq(m); }, cfg);
  DiscordResult out;
  out.raw_minimum = opt.value;
  out.value = kHilbertSchmidtScale * opt.value;
  out.argmin = opt.argmin;
  out.evals_used = opt.evals_used;
  out.converged = opt.converged;
  out.oracle_residual = obj.oracle_residual(opt.argmin);
  return out;
}

/// Partial transpose of the right (B) tensor factor.
inline Matrix9c partial_transpose_b(const Matrix9c& rho) {
  Matrix9c out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) out(3 * i + j, 3 * k + l) = rho(3 * i + l, 3 * k + j);
  return out;
}

/// Eigenvalues of rho^PT with |lambda| below this are treated as zero.
inline constexpr double kNegativityFloor = 1e-13;

/// N(rho) = (||rho^PT||_1 - 1) / 2, computed as the total weight of the negative
/// eigenvalues of rho^PT (equal because tr rho^PT = 1).
inline double negativity(const DensityMatrix& rho) {
  const Matrix9c pt = partial_transpose_b(rho.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix9c> solver(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double ev = solver.eigenvalues()[i];
    if (ev < -kNegativityFloor) neg -= ev;
  }
  return neg;
}

/// Draws measurement parameters uniformly over the chart.
template <class Rng>
MeasurementParams random_measurement(Rng& rng) {
  constexpr double pi = std::numbers::pi;
  std::uniform_real_distribution<double> angle(-pi, pi);
  std::uniform_real_distribution<double> half(-pi / 2, pi / 2);
  MeasurementParams m;
  m.theta = angle(rng);
  m.phi = angle(rng);
  m.chi = angle(rng);
  m.psi = half(rng);
  return m;
}

/// max - min of ||rho - P_A(rho)||_1 over seeded random measurements.
inline double constancy_gap(const DensityMatrix& rho, int n_samples, std::uint64_t seed,
                            const GellMannBasis& basis = qutrit_basis()) {
  if (n_samples <= 0) return 0.0;
  const DisturbanceObjective obj(rho, basis);
  std::mt19937_64 rng(seed);
  double lo = INFINITY, hi = -INFINITY;
  for (int s = 0; s < n_samples; ++s) {
    const double v = obj.trace_norm(random_measurement(rng));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

/// Singular values of the correlation matrix, descending.
inline Vector8r t_singular_values(const Matrix8r& t) {
  Eigen::JacobiSVD<Matrix8r> svd(t);
  return svd.singularValues();
}

}  // namespace qdiscord
