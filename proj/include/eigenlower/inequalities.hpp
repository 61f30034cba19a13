#pragma once

// Elementary scalar inequalities used by the eigenvalue estimates, evaluated
// in forms that stay accurate near their equality points.

#include <cmath>

namespace eigenlower::inequalities {

/// (x + e^{-x} - 1) / x^2 for x > 0. A Taylor series is used below x = 0.1,
/// where the closed form cancels catastrophically.
inline double d1_ratio(double x) {
  if (x < 0.1) {
    // sum_{k>=2} (-x)^k / k! divided by x^2
    double term = 0.5;
    double sum = 0.0;
    for (int k = 2; k < 20; ++k) {
      sum += term;
      term *= -x / (k + 1);
    }
    return sum;
  }
  return (x + std::expm1(-x)) / (x * x);
}

/// x / (1 + x^2), the lower bound for arctan on [0, 1].
inline double arctan_lower(double x) { return x / (1.0 + x * x); }

/// 1 / (1 + sqrt(1 - x)) - 1/2 written as x / (2 (1 + sqrt(1 - x))^2).
inline double gap_rhs(double x) {
  const double s = 1.0 + std::sqrt(1.0 - x);
  return x / (2.0 * s * s);
}

/// The same quantity in its literal form.
inline double gap_rhs_literal(double x) { return 1.0 / (1.0 + std::sqrt(1.0 - x)) - 0.5; }

}  // namespace eigenlower::inequalities
