#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qdiscord/bloch.hpp"
#include "qdiscord/su_basis.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord {

/// Coordinates of a rank-1 projective measurement on C^3.
/// theta, phi, chi range over [-pi, pi]; psi over [-pi/2, pi/2].
struct MeasurementParams {
  double theta = 0.0;
  double phi = 0.0;
  double chi = 0.0;
  double psi = 0.0;

  std::array<double, 4> as_array() const { return {theta, phi, chi, psi}; }
  static MeasurementParams from_array(const std::array<double, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }

  bool in_range() const noexcept {
    constexpr double pi = std::numbers::pi;
    auto inside = [](double v, double lim) { return std::isfinite(v) && v >= -lim && v <= lim; };
    return inside(theta, pi) && inside(phi, pi) && inside(chi, pi) && inside(psi, pi / 2);
  }

  void validate() const {
    if (!in_range())
      throw std::out_of_range("MeasurementParams out of range: (" + std::to_string(theta) + ", " +
                              std::to_string(phi) + ", " + std::to_string(chi) + ", " +
                              std::to_string(psi) + ")");
  }

  friend bool operator==(const MeasurementParams&, const MeasurementParams&) = default;
};

/// The standard-basis measurement (all parameters zero).
inline constexpr MeasurementParams kStandardMeasurement{};

struct ProjectorTriple {
  std::array<Matrix3c, 3> p;

  const Matrix3c& operator[](std::size_t i) const { return p[i]; }

  /// max over |P_j P_k - delta_jk P_k| and |sum_j P_j - I|
  double algebra_residual() const {
    double worst = (p[0] + p[1] + p[2] - Matrix3c::Identity()).cwiseAbs().maxCoeff();
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        const Matrix3c expect = (j == k) ? p[k] : Matrix3c::Zero();
        worst = std::max(worst, (p[j] * p[k] - expect).cwiseAbs().maxCoeff());
      }
    return worst;
  }
};

inline ProjectorTriple projectors(const MeasurementParams& m) {
  m.validate();
  using std::cos, std::sin, std::exp;
  const complex_t i{0.0, 1.0};
  const double ct = cos(m.theta), st = sin(m.theta);
  const double cp = cos(m.phi), sp = sin(m.phi);
  const double a = 0.5 * sin(2 * m.theta) * sp * sp;
  const double b = 0.5 * ct * sin(2 * m.phi);
  const double c = 0.5 * st * sin(2 * m.phi);
  const double d = 0.5 * sin(2 * m.theta) * cp * cp;
  const complex_t e_pc = exp(i * (m.psi - m.chi));   // e^{i(psi - chi)}
  const complex_t e_chi = exp(i * m.chi);
  const complex_t e_psi = exp(i * m.psi);

  ProjectorTriple out;
  Matrix3c& p1 = out.p[0];
  p1 << ct * ct * sp * sp, std::conj(e_pc) * a, e_chi * b,
        e_pc * a, st * st * sp * sp, e_psi * c,
        std::conj(e_chi) * b, std::conj(e_psi) * c, cp * cp;
  Matrix3c& p2 = out.p[1];
  p2 << ct * ct * cp * cp, std::conj(e_pc) * d, -e_chi * b,
        e_pc * d, st * st * cp * cp, -e_psi * c,
        -std::conj(e_chi) * b, -std::conj(e_psi) * c, sp * sp;
  Matrix3c& p3 = out.p[2];
  const double s2t = sin(2 * m.theta);
  p3 << st * st, -0.5 * std::conj(e_pc) * s2t, 0.0,
        -0.5 * e_pc * s2t, ct * ct, 0.0,
        0.0, 0.0, 0.0;
  return out;
}

/// Pinching map sigma -> sum_i P_i sigma P_i on C^3.
inline Matrix3c pinch(const ProjectorTriple& proj, const Matrix3c& sigma) {
  return proj.p[0] * sigma * proj.p[0] + proj.p[1] * sigma * proj.p[1] +
         proj.p[2] * sigma * proj.p[2];
}

/// a_jk = 1/2 tr(P(lambda_j) lambda_k). Real, symmetric and idempotent with trace 2.
inline Matrix8r superop_A(const ProjectorTriple& proj, const GellMannBasis& basis = qutrit_basis()) {
  require_qutrit(basis, "superop_A");
  const auto lam = detail::generators3(basis);
  Matrix8r a;
  for (int j = 0; j < kBlochDim; ++j) {
    const Matrix3c pj = pinch(proj, lam[static_cast<std::size_t>(j)]);
    for (int k = 0; k < kBlochDim; ++k)
      a(j, k) = 0.5 * detail::checked_real((pj * lam[static_cast<std::size_t>(k)]).trace(),
                                           "superop_A");
  }
  return a;
}

inline Matrix8r superop_A(const MeasurementParams& m, const GellMannBasis& basis = qutrit_basis()) {
  return superop_A(projectors(m), basis);
}

/// M = I - A: projector onto the six-dimensional subspace disturbed by the measurement.
inline Matrix8r superop_M(const MeasurementParams& m, const GellMannBasis& basis = qutrit_basis()) {
  return Matrix8r::Identity() - superop_A(m, basis);
}

inline Matrix8r superop_M(const ProjectorTriple& proj, const GellMannBasis& basis = qutrit_basis()) {
  return Matrix8r::Identity() - superop_A(proj, basis);
}

/// sum_i (P_i x I) rho (P_i x I) without validation.
inline Matrix9c measure_local(const ProjectorTriple& proj, const Matrix9c& rho) {
  Matrix9c out = Matrix9c::Zero();
  const Matrix3c id = Matrix3c::Identity();
  for (const Matrix3c& p : proj.p) {
    const Matrix9c big = kron(p, id);
    out.noalias() += big * rho * big;
  }
  return out;
}

/// Post-measurement state P_A(rho) for a measurement on subsystem A.
inline DensityMatrix apply_measurement(const DensityMatrix& rho, const MeasurementParams& m) {
  return DensityMatrix::from_matrix(measure_local(projectors(m), rho.matrix()));
}

}  // namespace qdiscord
