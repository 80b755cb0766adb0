#pragma once

#include <complex>

#include <Eigen/Core>

namespace qdiscord {

using complex_t = std::complex<double>;

// Dynamic-size types for the generic su(d) basis.
using MatrixXc = Eigen::MatrixXcd;
using VectorXr = Eigen::VectorXd;

// Fixed-size types for the two-qutrit pipeline.
using Matrix3c = Eigen::Matrix<complex_t, 3, 3>;
using Matrix9c = Eigen::Matrix<complex_t, 9, 9>;
using Vector9c = Eigen::Matrix<complex_t, 9, 1>;
using Vector8r = Eigen::Matrix<double, 8, 1>;
using Matrix8r = Eigen::Matrix<double, 8, 8>;
using Vector9r = Eigen::Matrix<double, 9, 1>;

inline constexpr int kQutritDim = 3;
inline constexpr int kBlochDim = kQutritDim * kQutritDim - 1;   // 8
inline constexpr int kPairDim = kQutritDim * kQutritDim;        // 9

/// Kronecker product of two 3x3 matrices, left factor is subsystem A.
inline Matrix9c kron(const Matrix3c& a, const Matrix3c& b) {
  Matrix9c out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return out;
}

}  // namespace qdiscord
