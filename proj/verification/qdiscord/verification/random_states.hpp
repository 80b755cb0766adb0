#pragma once

#include <cstdint>
#include <random>

#include "qdiscord/bloch.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord::verification {

template <class Matrix, class Rng>
Matrix ginibre(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g;
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = complex_t{normal(rng), normal(rng)};
  return g;
}

/// Full-rank random two-qutrit state G G^* / tr(G G^*).
template <class Rng>
DensityMatrix random_state(Rng& rng) {
  const Matrix9c g = ginibre<Matrix9c>(rng);
  Matrix9c rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::from_matrix(rho);
}

/// Bloch vector of a Haar-random pure single-qutrit state.
template <class Rng>
Vector8r random_pure_qutrit_bloch(Rng& rng, const GellMannBasis& basis = qutrit_basis()) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Matrix<complex_t, 3, 1> v;
  for (int i = 0; i < 3; ++i) v[i] = complex_t{normal(rng), normal(rng)};
  v.normalize();
  return single_qutrit_bloch(v * v.adjoint(), basis);
}

/// Bloch vector of a full-rank random single-qutrit state.
template <class Rng>
Vector8r random_mixed_qutrit_bloch(Rng& rng, const GellMannBasis& basis = qutrit_basis()) {
  const Matrix3c g = ginibre<Matrix3c>(rng);
  Matrix3c rho = g * g.adjoint();
  rho /= rho.trace().real();
  return single_qutrit_bloch(rho, basis);
}

}  // namespace qdiscord::verification
