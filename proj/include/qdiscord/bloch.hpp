#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qdiscord/su_basis.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

struct StateDiagnostics {
  bool valid = false;
  double min_eigenvalue = 0.0;
  double trace_deviation = 0.0;
  double hermiticity_residual = 0.0;
};

/// Checks Hermiticity, unit trace and positivity (min eigenvalue >= -tol) of a
/// square complex matrix. Never throws; non-square input is reported invalid.
inline StateDiagnostics is_state(const MatrixXc& m, double tol = kPsdTol) {
  StateDiagnostics diag;
  if (m.rows() != m.cols() || m.rows() == 0) {
    diag.hermiticity_residual = INFINITY;
    diag.trace_deviation = INFINITY;
    diag.min_eigenvalue = -INFINITY;
    return diag;
  }
  diag.hermiticity_residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  diag.trace_deviation = std::abs(m.trace() - complex_t{1.0, 0.0});
  const MatrixXc herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(herm, Eigen::EigenvaluesOnly);
  diag.min_eigenvalue = solver.eigenvalues().minCoeff();
  diag.valid = diag.hermiticity_residual <= kHermitianTol && diag.trace_deviation <= kTraceTol &&
               diag.min_eigenvalue >= -tol;
  return diag;
}

class invalid_state : public std::invalid_argument {
 public:
  explicit invalid_state(const StateDiagnostics& d)
      : std::invalid_argument(describe(d)), diagnostics_(d) {}
  const StateDiagnostics& diagnostics() const noexcept { return diagnostics_; }

  static std::string describe(const StateDiagnostics& d) {
    return "not a density matrix: hermiticity residual " + std::to_string(d.hermiticity_residual) +
           ", trace deviation " + std::to_string(d.trace_deviation) + ", min eigenvalue " +
           std::to_string(d.min_eigenvalue);
  }

 private:
  StateDiagnostics diagnostics_;
};

/// A validated two-qutrit state (9x9, Hermitian, unit trace, PSD within tolerance).
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const Matrix9c& m, double tol = kPsdTol) {
    const StateDiagnostics d = is_state(m, tol);
    if (!d.valid) throw invalid_state(d);
    return DensityMatrix(m);
  }

  const Matrix9c& matrix() const noexcept { return m_; }
  complex_t operator()(int r, int c) const { return m_(r, c); }

 private:
  explicit DensityMatrix(const Matrix9c& m) : m_(m) {}
  Matrix9c m_;
};

/// Bloch parametrization of a two-qutrit state: marginal vectors x (subsystem A),
/// y (subsystem B) and the correlation matrix t.
struct BlochForm {
  Vector8r x = Vector8r::Zero();
  Vector8r y = Vector8r::Zero();
  Matrix8r t = Matrix8r::Zero();
};

namespace detail {

inline double checked_real(complex_t v, const char* what) {
  if (std::abs(v.imag()) > kHermitianTol)
    throw std::logic_error(std::string(what) + ": imaginary residue " + std::to_string(v.imag()));
  return v.real();
}

inline std::array<Matrix3c, kBlochDim> generators3(const GellMannBasis& basis) {
  std::array<Matrix3c, kBlochDim> out;
  for (int j = 0; j < kBlochDim; ++j) out[static_cast<std::size_t>(j)] = basis.generator(j);
  return out;
}

}  // namespace detail

/// Trace over subsystem B; returns the state of A.
inline Matrix3c partial_trace_b(const Matrix9c& rho) {
  Matrix3c out = Matrix3c::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out(i, j) += rho(3 * i + k, 3 * j + k);
  return out;
}

/// Trace over subsystem A; returns the state of B.
inline Matrix3c partial_trace_a(const Matrix9c& rho) {
  Matrix3c out = Matrix3c::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out(i, j) += rho(3 * k + i, 3 * k + j);
  return out;
}

/// (1/3)(I + d'' <n, lambda>)
inline Matrix3c single_qutrit_state(const Vector8r& n, const GellMannBasis& basis = qutrit_basis()) {
  require_qutrit(basis, "single_qutrit_state");
  return (Matrix3c::Identity() + basis.d_dprime() * qutrit_expand(basis, n)) / 3.0;
}

/// Bloch vector of a single-qutrit matrix: n_j = d / sqrt(2d(d-1)) tr(rho lambda_j).
inline Vector8r single_qutrit_bloch(const Matrix3c& rho, const GellMannBasis& basis = qutrit_basis()) {
  require_qutrit(basis, "single_qutrit_bloch");
  const double scale = 3.0 / std::sqrt(12.0);
  Vector8r n;
  for (int j = 0; j < kBlochDim; ++j)
    n[j] = scale * detail::checked_real((rho * Matrix3c(basis.generator(j))).trace(),
                                        "single_qutrit_bloch");
  return n;
}

inline BlochForm to_bloch(const DensityMatrix& state, const GellMannBasis& basis = qutrit_basis()) {
  require_qutrit(basis, "to_bloch");
  const Matrix9c& rho = state.matrix();
  const auto lam = detail::generators3(basis);
  const double marginal_scale = 3.0 / std::sqrt(12.0);

  const Matrix3c rho_a = partial_trace_b(rho);
  const Matrix3c rho_b = partial_trace_a(rho);
  BlochForm b;
  for (int j = 0; j < kBlochDim; ++j) {
    b.x[j] = marginal_scale *
             detail::checked_real((rho_a * lam[static_cast<std::size_t>(j)]).trace(), "to_bloch x");
    b.y[j] = marginal_scale *
             detail::checked_real((rho_b * lam[static_cast<std::size_t>(j)]).trace(), "to_bloch y");
  }
  for (int j = 0; j < kBlochDim; ++j) {
    for (int k = 0; k < kBlochDim; ++k) {
      const Matrix9c op = kron(lam[static_cast<std::size_t>(j)], lam[static_cast<std::size_t>(k)]);
      // tr(rho op) = sum_rc rho(r,c) op(c,r)
      const complex_t tr = (rho.array() * op.transpose().array()).sum();
      b.t(j, k) = 9.0 / 4.0 * detail::checked_real(tr, "to_bloch T");
    }
  }
  return b;
}

/// Inverse of to_bloch. The result is Hermitian with unit trace but is not
/// necessarily positive; check it with is_state before use as a state.
inline Matrix9c from_bloch(const BlochForm& b, const GellMannBasis& basis = qutrit_basis()) {
  require_qutrit(basis, "from_bloch");
  const auto lam = detail::generators3(basis);
  const Matrix3c id = Matrix3c::Identity();
  const double dpp = basis.d_dprime();
  Matrix9c out = Matrix9c::Identity();
  out += dpp * kron(qutrit_expand(basis, b.x), id);
  out += dpp * kron(id, qutrit_expand(basis, b.y));
  for (int j = 0; j < kBlochDim; ++j) {
    for (int k = 0; k < kBlochDim; ++k) {
      const double tjk = b.t(j, k);
      if (tjk != 0.0)
        out += tjk * kron(lam[static_cast<std::size_t>(j)], lam[static_cast<std::size_t>(k)]);
    }
  }
  return out / 9.0;
}

struct PurityFlags {
  bool norm_ok = false;
  bool idempotent_ok = false;
  bool pure() const noexcept { return norm_ok && idempotent_ok; }
};

/// Pure-state test on a single-qutrit Bloch vector: <n,n> = 1 and n * n = n.
inline PurityFlags purity_conditions(const Vector8r& n, const GellMannBasis& basis = qutrit_basis(),
                                     double tol = 1e-10) {
  require_qutrit(basis, "purity_conditions");
  PurityFlags flags;
  flags.norm_ok = std::abs(n.squaredNorm() - 1.0) <= tol;
  const VectorXr nn = basis.star(n, n);
  flags.idempotent_ok = (nn - VectorXr(n)).cwiseAbs().maxCoeff() <= tol;
  return flags;
}

}  // namespace qdiscord
