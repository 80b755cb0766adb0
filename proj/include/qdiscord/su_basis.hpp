#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdiscord/types.hpp"

namespace qdiscord {

/// Generators of su(d) in the generalized Gell-Mann convention together with
/// their symmetric and antisymmetric structure constants.
///
/// Generator ordering: for every column index c = 1..d-1 the off-diagonal pairs
/// (r, c), r < c, appear as (symmetric, antisymmetric) and are followed by the
/// c-th diagonal generator. For d = 3 this is the textbook lambda_1..lambda_8
/// with lambda_3, lambda_8 diagonal and lambda_2, lambda_5, lambda_7 imaginary.
///
/// Indices are zero-based throughout the API. Instances are immutable.
class GellMannBasis {
 public:
  explicit GellMannBasis(int d) : dim_(check_dim(d)), count_(d * d - 1) {
    build_generators();
    sym_.assign(static_cast<std::size_t>(count_) * count_ * count_, 0.0);
    antisym_.assign(sym_.size(), 0.0);
    compute_structure_constants();
  }

  /// Assembles a basis from explicit parts without recomputing anything.
  /// Used to inject corrupted tables when exercising the verification checks.
  static GellMannBasis from_parts(int d, std::vector<MatrixXc> generators,
                                  std::vector<double> sym,
                                  std::vector<double> antisym) {
    const int n = check_dim(d) * d - 1;
    const auto cube = static_cast<std::size_t>(n) * n * n;
    if (static_cast<int>(generators.size()) != n || sym.size() != cube ||
        antisym.size() != cube)
      throw std::invalid_argument("GellMannBasis::from_parts: inconsistent sizes");
    return GellMannBasis(d, std::move(generators), std::move(sym), std::move(antisym));
  }

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return count_; }

  const MatrixXc& generator(int j) const {
    check_index(j);
    return generators_[static_cast<std::size_t>(j)];
  }
  const std::vector<MatrixXc>& generators() const noexcept { return generators_; }

  /// d' = sqrt(d(d-1)/2) / (d-2), the prefactor of the star and wedge products.
  double d_prime() const noexcept { return d_dprime() / (dim_ - 2); }
  /// d'' = sqrt(d(d-1)/2), the Bloch-vector prefactor.
  double d_dprime() const noexcept { return std::sqrt(dim_ * (dim_ - 1) / 2.0); }

  double struct_d(int j, int k, int l) const {
    check_index(j), check_index(k), check_index(l);
    return sym_[flat(j, k, l)];
  }
  double struct_f(int j, int k, int l) const {
    check_index(j), check_index(k), check_index(l);
    return antisym_[flat(j, k, l)];
  }

  const std::vector<double>& sym_table() const noexcept { return sym_; }
  const std::vector<double>& antisym_table() const noexcept { return antisym_; }

  /// (n * m)_j = d' sum_{k,l} d_jkl n_k m_l
  VectorXr star(const VectorXr& n, const VectorXr& m) const {
    return contract(sym_, n, m);
  }
  /// (n ^ m)_j = d' sum_{k,l} f_jkl n_k m_l
  VectorXr wedge(const VectorXr& n, const VectorXr& m) const {
    return contract(antisym_, n, m);
  }

  /// <n, lambda> = sum_j n_j lambda_j
  MatrixXc expand(const VectorXr& n) const {
    check_length(n, "expand");
    MatrixXc out = MatrixXc::Zero(dim_, dim_);
    for (int j = 0; j < count_; ++j) out += n[j] * generators_[static_cast<std::size_t>(j)];
    return out;
  }

 private:
  GellMannBasis(int d, std::vector<MatrixXc> g, std::vector<double> s, std::vector<double> a)
      : dim_(d), count_(d * d - 1), generators_(std::move(g)), sym_(std::move(s)),
        antisym_(std::move(a)) {}

  static int check_dim(int d) {
    if (d < 3)
      throw std::domain_error("GellMannBasis: d must be at least 3 (d' = sqrt(d(d-1)/2)/(d-2) "
                              "is singular at d = 2), got d = " + std::to_string(d));
    return d;
  }

  void check_index(int j) const {
    if (j < 0 || j >= count_)
      throw std::out_of_range("GellMannBasis: generator index " + std::to_string(j) +
                              " outside [0, " + std::to_string(count_) + ")");
  }

  void check_length(const VectorXr& v, const char* what) const {
    if (v.size() != count_)
      throw std::invalid_argument(std::string("GellMannBasis::") + what + ": expected length " +
                                  std::to_string(count_) + ", got " + std::to_string(v.size()));
  }

  std::size_t flat(int j, int k, int l) const noexcept {
    return (static_cast<std::size_t>(j) * count_ + k) * count_ + l;
  }

  void build_generators() {
    generators_.reserve(static_cast<std::size_t>(count_));
    const complex_t i{0.0, 1.0};
    for (int c = 1; c < dim_; ++c) {
      for (int r = 0; r < c; ++r) {
        MatrixXc s = MatrixXc::Zero(dim_, dim_);
        s(r, c) = 1.0;
        s(c, r) = 1.0;
        generators_.push_back(std::move(s));
        MatrixXc a = MatrixXc::Zero(dim_, dim_);
        a(r, c) = -i;
        a(c, r) = i;
        generators_.push_back(std::move(a));
      }
      MatrixXc diag = MatrixXc::Zero(dim_, dim_);
      const double scale = std::sqrt(2.0 / (c * (c + 1.0)));
      for (int r = 0; r < c; ++r) diag(r, r) = scale;
      diag(c, c) = -c * scale;
      generators_.push_back(std::move(diag));
    }
  }

  void compute_structure_constants() {
    constexpr double tol = 1e-12;
    for (int j = 0; j < count_; ++j) {
      for (int k = 0; k < count_; ++k) {
        const MatrixXc& lj = generators_[static_cast<std::size_t>(j)];
        const MatrixXc& lk = generators_[static_cast<std::size_t>(k)];
        const MatrixXc anti = lj * lk + lk * lj;
        const MatrixXc comm = lj * lk - lk * lj;
        for (int l = 0; l < count_; ++l) {
          const MatrixXc& ll = generators_[static_cast<std::size_t>(l)];
          const complex_t dv = 0.25 * (anti * ll).trace();
          const complex_t fv = (comm * ll).trace() / complex_t{0.0, 4.0};
          if (std::abs(dv.imag()) > tol || std::abs(fv.imag()) > tol)
            throw std::logic_error("GellMannBasis: structure constant has imaginary residue");
          sym_[flat(j, k, l)] = dv.real();
          antisym_[flat(j, k, l)] = fv.real();
        }
      }
    }
  }

  VectorXr contract(const std::vector<double>& table, const VectorXr& n, const VectorXr& m) const {
    check_length(n, "star/wedge");
    check_length(m, "star/wedge");
    VectorXr out = VectorXr::Zero(count_);
    for (int j = 0; j < count_; ++j) {
      double acc = 0.0;
      for (int k = 0; k < count_; ++k) {
        if (n[k] == 0.0) continue;
        double inner = 0.0;
        for (int l = 0; l < count_; ++l) inner += table[flat(j, k, l)] * m[l];
        acc += n[k] * inner;
      }
      out[j] = d_prime() * acc;
    }
    return out;
  }

  int dim_;
  int count_;
  std::vector<MatrixXc> generators_;
  std::vector<double> sym_;
  std::vector<double> antisym_;
};

/// Shared su(3) basis for the two-qutrit pipeline.
inline const GellMannBasis& qutrit_basis() {
  static const GellMannBasis basis(kQutritDim);
  return basis;
}

/// Generator j of a qutrit basis as a fixed-size matrix.
inline Matrix3c qutrit_generator(const GellMannBasis& basis, int j) {
  return Matrix3c(basis.generator(j));
}

/// <n, lambda> for an 8-vector on a qutrit basis.
inline Matrix3c qutrit_expand(const GellMannBasis& basis, const Vector8r& n) {
  Matrix3c out = Matrix3c::Zero();
  for (int j = 0; j < kBlochDim; ++j) {
    if (n[j] != 0.0) out += n[j] * Matrix3c(basis.generator(j));
  }
  return out;
}

inline void require_qutrit(const GellMannBasis& basis, const char* what) {
  if (basis.dim() != kQutritDim)
    throw std::invalid_argument(std::string(what) + ": requires a d = 3 basis, got d = " +
                                std::to_string(basis.dim()));
}

}  // namespace qdiscord
