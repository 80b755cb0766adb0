#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "qdiscord/states.hpp"

// Closed-form values for the catalog families. Kept apart from the library so
// regression checks never share code with what they check.

namespace qdiscord::verification {

struct ReferenceValues {
  std::optional<double> d1;
  std::optional<double> d2;
  std::optional<double> negativity;
};

inline double werner_negativity(double p) { return p <= 0.25 ? 0.0 : (4.0 * p - 1.0) / 3.0; }

inline double horodecki_g(double alpha) { return std::sqrt(41.0 - 20.0 * alpha + 4.0 * alpha * alpha); }

inline double horodecki_negativity(double alpha) {
  if (alpha > 1.0 && alpha < 4.0) return 0.0;
  return (horodecki_g(alpha) - 5.0) / 14.0;
}

/// Singular values of the horodecki correlation matrix, descending.
inline std::array<double, 8> horodecki_singular_values(double alpha) {
  const double outer = 3.0 / 28.0 * std::sqrt(1.0 + 3.0 * (2.0 * alpha - 5.0) * (2.0 * alpha - 5.0));
  std::array<double, 8> s{};
  for (int i = 0; i < 6; ++i) s[static_cast<std::size_t>(i)] = 3.0 / 7.0;
  s[6] = s[7] = outer;
  std::sort(s.begin(), s.end(), [](double a, double b) { return a > b; });
  return s;
}

/// Known lower bound on D2 for the horodecki family. The bound switches branch
/// where (9 - 5 alpha + alpha^2) = 4, i.e. alpha = (5 -+ sqrt 5) / 2.
inline double horodecki_d2_lower_bound(double alpha) {
  const double lo = (5.0 - std::sqrt(5.0)) / 2.0, hi = (5.0 + std::sqrt(5.0)) / 2.0;
  if (alpha <= lo || alpha >= hi) return 4.0 / 49.0;
  return (9.0 - 5.0 * alpha + alpha * alpha) / 49.0;
}

inline bool horodecki_outer_range(double alpha) {
  return alpha <= (5.0 - std::sqrt(5.0)) / 2.0 || alpha >= (5.0 + std::sqrt(5.0)) / 2.0;
}

inline ReferenceValues reference_values(const FamilySpec& spec) {
  ReferenceValues ref;
  switch (spec.family) {
    case Family::bell:
      ref.d1 = 1.0, ref.d2 = 1.0, ref.negativity = 1.0;
      break;
    case Family::werner: {
      const double p = spec.require("p");
      ref.d1 = p, ref.d2 = p * p, ref.negativity = werner_negativity(p);
      break;
    }
    case Family::ac: {
      double a = 0.0, c = 0.0;
      if (spec.get("r")) {
        a = spec.require("r") * std::cos(spec.require("theta"));
        c = spec.require("r") * std::sin(spec.require("theta"));
      } else {
        a = spec.require("a"), c = spec.require("c");
      }
      ref.d1 = 1.5 * std::sqrt(a * a + c * c);
      ref.negativity = a + c;
      break;
    }
    case Family::horodecki: {
      const double alpha = spec.require("alpha");
      ref.d1 = 2.0 / 7.0, ref.d2 = 4.0 / 49.0, ref.negativity = horodecki_negativity(alpha);
      break;
    }
    case Family::file:
      throw std::invalid_argument("reference_values: file-backed states have no closed form");
  }
  return ref;
}

}  // namespace qdiscord::verification
