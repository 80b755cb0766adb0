#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qdiscord/bloch.hpp"
#include "qdiscord/types.hpp"

namespace qdiscord {

// Product basis ordering: |i> x |j> sits at flat index 3 i + j (zero-based).
inline constexpr int pair_index(int i, int j) { return 3 * i + j; }

inline Vector9c bell_vector() {
  Vector9c v = Vector9c::Zero();
  for (int k = 0; k < 3; ++k) v[pair_index(k, k)] = 1.0 / std::sqrt(3.0);
  return v;
}

inline Matrix9c product_projector(int i, int j) {
  Matrix9c p = Matrix9c::Zero();
  p(pair_index(i, j), pair_index(i, j)) = 1.0;
  return p;
}

/// |Psi0><Psi0| with Psi0 = (1/sqrt 3) sum_k phi_k x phi_k.
inline DensityMatrix bell() {
  const Vector9c v = bell_vector();
  return DensityMatrix::from_matrix(v * v.adjoint());
}

/// (1 - p) I/9 + p |Psi0><Psi0|, p in [0, 1].
inline DensityMatrix werner(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::out_of_range("werner: p must lie in [0, 1], got " + std::to_string(p));
  const Vector9c v = bell_vector();
  return DensityMatrix::from_matrix((1.0 - p) * Matrix9c::Identity() / 9.0 + p * v * v.adjoint());
}

/// Diagonal 1/3 on |11>, |22>, |33> with real couplings a between |11>,|22> and
/// c between |22>,|33>. Positive iff a^2 + c^2 <= 1/9.
inline DensityMatrix ac_state(double a, double c) {
  if (!(a >= 0.0 && c >= 0.0))
    throw std::out_of_range("ac_state: a and c must be nonnegative");
  // Boundary is tested with a small slack so that polar points with r = 1/3 pass.
  if (a * a + c * c > 1.0 / 9.0 + 1e-14)
    throw std::out_of_range("ac_state: a^2 + c^2 = " + std::to_string(a * a + c * c) +
                            " exceeds 1/9, matrix is not positive");
  Matrix9c m = Matrix9c::Zero();
  const int i11 = pair_index(0, 0), i22 = pair_index(1, 1), i33 = pair_index(2, 2);
  m(i11, i11) = m(i22, i22) = m(i33, i33) = 1.0 / 3.0;
  m(i11, i22) = m(i22, i11) = a;
  m(i22, i33) = m(i33, i22) = c;
  return DensityMatrix::from_matrix(m);
}

/// ac_state in polar form a = r cos(theta), c = r sin(theta).
inline DensityMatrix ac_state_polar(double r, double theta) {
  if (!(r >= 0.0 && r <= 1.0 / 3.0 + 1e-15))
    throw std::out_of_range("ac_state_polar: r must lie in [0, 1/3]");
  if (!(theta >= -1e-15 && theta <= std::numbers::pi / 2 + 1e-15))
    throw std::out_of_range("ac_state_polar: theta must lie in [0, pi/2]");
  return ac_state(std::max(0.0, r * std::cos(theta)), std::max(0.0, r * std::sin(theta)));
}

/// (2/7)|Psi0><Psi0| + (alpha/7) rho_+ + ((5 - alpha)/7) rho_-, alpha in [0, 5].
/// Separable for 2 <= alpha <= 3, bound entangled for 3 < alpha <= 4, free
/// entangled above 4.
inline DensityMatrix horodecki(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 5.0))
    throw std::out_of_range("horodecki: alpha must lie in [0, 5], got " + std::to_string(alpha));
  const Vector9c v = bell_vector();
  const Matrix9c plus =
      (product_projector(0, 1) + product_projector(1, 2) + product_projector(2, 0)) / 3.0;
  const Matrix9c minus =
      (product_projector(1, 0) + product_projector(2, 1) + product_projector(0, 2)) / 3.0;
  return DensityMatrix::from_matrix(2.0 / 7.0 * v * v.adjoint() + alpha / 7.0 * plus +
                                    (5.0 - alpha) / 7.0 * minus);
}

enum class Family { bell, werner, ac, horodecki, file };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::bell: return "bell";
    case Family::werner: return "werner";
    case Family::ac: return "ac";
    case Family::horodecki: return "horodecki";
    case Family::file: return "file";
  }
  return "unknown";
}

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::bell, Family::werner, Family::ac, Family::horodecki, Family::file})
    if (family_name(f) == name) return f;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

/// A catalog family plus its named parameters: "p" (werner), "a"/"c" or
/// "r"/"theta" (ac), "alpha" (horodecki).
struct FamilySpec {
  Family family = Family::bell;
  std::map<std::string, double> params;

  std::optional<double> get(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  }

  double require(const std::string& key) const {
    if (auto v = get(key)) return *v;
    throw std::invalid_argument(std::string(family_name(family)) + ": missing parameter '" + key + "'");
  }
};

/// Builds the catalog state for a spec. File-backed specs have no closed form
/// and must be loaded through the io layer.
inline DensityMatrix make_state(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::bell: return bell();
    case Family::werner: return werner(spec.require("p"));
    case Family::ac:
      if (spec.get("r") || spec.get("theta"))
        return ac_state_polar(spec.require("r"), spec.require("theta"));
      return ac_state(spec.require("a"), spec.require("c"));
    case Family::horodecki: return horodecki(spec.require("alpha"));
    case Family::file: break;
  }
  throw std::invalid_argument("make_state: file-backed states are loaded by the io layer");
}

}  // namespace qdiscord
