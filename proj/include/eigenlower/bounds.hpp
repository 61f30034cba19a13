#pragma once

// Closed-form lower bounds for the first eigenvalue of a closed embedded
// minimal hypersurface of S^{m+1} in terms of m and Lambda = max |A|.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "eigenlower/error.hpp"
#include "eigenlower/inequalities.hpp"

namespace eigenlower::bounds {

inline constexpr double kRigidRelTol = 1e-12;

namespace detail {

inline void require_dimension(int m) {
  if (m < 2) fail(ErrorKind::InvalidDimension, "bounds require m >= 2");
}

// Lambda <= sqrt(m), inclusive, with a relative slack for inputs like sqrt(2).
inline bool is_rigid(int m, double big_lambda) { return big_lambda <= std::sqrt(m) * (1.0 + kRigidRelTol); }

}  // namespace detail

struct MainBound {
  double value = 0.0;
  bool rigid = false;
};

/// m when Lambda <= sqrt(m); otherwise m/2 + m(m+1) / (32 (12 Lambda + m + 11)^2 + 8).
inline MainBound main_bound(int m, double big_lambda) {
  detail::require_dimension(m);
  if (!(big_lambda >= 0.0)) fail(ErrorKind::InvalidArgument, "Lambda must be nonnegative");
  if (detail::is_rigid(m, big_lambda)) return {static_cast<double>(m), true};
  const double s = 12.0 * big_lambda + m + 11.0;
  return {0.5 * m + m * (m + 1.0) / (32.0 * s * s + 8.0), false};
}

inline double choi_wang(int m) {
  detail::require_dimension(m);
  return 0.5 * m;
}

struct DssCoefficients {
  double a = 0.0;
  double b = 0.0;
  double a_ceiling = 0.0;  // (m-1) m^2 / 28800
  double b_floor = 0.0;    // 5 (m-1) m / 1728
  bool sane() const { return a <= a_ceiling && b >= b_floor; }
};

/// a(m) = 3 sqrt(m) (m-1) / 3200 * w^3 and b(m) = 5 (m-1) / (8 sqrt(m)) * w^3,
/// with w = m arctan(1 / (3 sqrt(m))).
inline DssCoefficients dss_coefficients(int m) {
  detail::require_dimension(m);
  const double rm = std::sqrt(static_cast<double>(m));
  const double w = m * std::atan(1.0 / (3.0 * rm));
  const double w3 = w * w * w;
  DssCoefficients c;
  c.a = 3.0 * rm * (m - 1.0) / 3200.0 * w3;
  c.b = 5.0 * (m - 1.0) / (8.0 * rm) * w3;
  c.a_ceiling = (m - 1.0) * m * m / 28800.0;
  c.b_floor = 5.0 * (m - 1.0) * m / 1728.0;
  return c;
}

/// m/2 + a(m) / (Lambda^6 + b(m)), valid for Lambda >= sqrt(m).
inline double dss_bound(int m, double big_lambda) {
  detail::require_dimension(m);
  if (big_lambda < std::sqrt(m) * (1.0 - kRigidRelTol)) {
    fail(ErrorKind::HypothesisViolated, "dss_bound requires Lambda >= sqrt(m)");
  }
  const auto c = dss_coefficients(m);
  const double l2 = big_lambda * big_lambda;
  return 0.5 * m + c.a / (l2 * l2 * l2 + c.b);
}

/// 1 + 3 / (16 (12 C + 13)^2 + 4).
inline double genus_bound(double c_chi) {
  if (!(c_chi > 0.0)) fail(ErrorKind::InvalidArgument, "genus bound requires C > 0");
  const double s = 12.0 * c_chi + 13.0;
  return 1.0 + 3.0 / (16.0 * s * s + 4.0);
}

struct BoundReport {
  int m = 0;
  double big_lambda = 0.0;
  double choi_wang = 0.0;
  double main_bound = 0.0;
  bool main_is_rigid = false;
  std::optional<double> dss_bound;
  double dss_a = 0.0;
  double dss_b = 0.0;
  std::optional<double> genus_bound;
  bool main_beats_dss = true;  // vacuous when dss is undefined
};

inline BoundReport compare(int m, double big_lambda, std::optional<double> c_chi = std::nullopt) {
  BoundReport r;
  r.m = m;
  r.big_lambda = big_lambda;
  r.choi_wang = choi_wang(m);
  const auto mb = main_bound(m, big_lambda);
  r.main_bound = mb.value;
  r.main_is_rigid = mb.rigid;
  const auto c = dss_coefficients(m);
  r.dss_a = c.a;
  r.dss_b = c.b;
  if (big_lambda >= std::sqrt(m) * (1.0 - kRigidRelTol)) {
    r.dss_bound = dss_bound(m, big_lambda);
    r.main_beats_dss = r.main_bound >= *r.dss_bound;
  }
  if (c_chi) r.genus_bound = genus_bound(*c_chi);
  return r;
}

struct ComparisonSweep {
  std::size_t points = 0;
  std::size_t violations = 0;
  std::size_t ties = 0;
  double min_increment_ratio = 0.0;  // min over points of (main - m/2) / (dss - m/2), non-rigid points
};

/// main >= dss on m in [m_lo, m_hi] x `samples` log-spaced Lambda in [sqrt(m), lambda_max].
inline ComparisonSweep dss_comparison_sweep(int m_lo, int m_hi, std::size_t samples, double lambda_max) {
  if (samples < 2) fail(ErrorKind::InvalidArgument, "sweep needs at least 2 samples");
  ComparisonSweep s;
  s.min_increment_ratio = std::numeric_limits<double>::infinity();
  for (int m = m_lo; m <= m_hi; ++m) {
    const double lo = std::log(std::sqrt(m)), hi = std::log(lambda_max);
    for (std::size_t i = 0; i < samples; ++i) {
      const double big_lambda = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1));
      const auto r = compare(m, big_lambda);
      ++s.points;
      if (!r.dss_bound) continue;
      if (r.main_bound < *r.dss_bound) ++s.violations;
      if (r.main_bound == *r.dss_bound) ++s.ties;
      if (!r.main_is_rigid) {
        s.min_increment_ratio =
            std::min(s.min_increment_ratio, (r.main_bound - 0.5 * m) / (*r.dss_bound - 0.5 * m));
      }
    }
  }
  return s;
}

struct GapCheck {
  double x = 0.0;
  double lhs = 0.0;  // x / 8
  double rhs = 0.0;  // 1 / (1 + sqrt(1 - x)) - 1/2
  double lambda_from_q = 0.0;
  double lambda_floor = 0.0;  // m/2 + m (m+1) / (8 Q)
  bool holds = false;
};

/// x/8 < 1/(1 + sqrt(1-x)) - 1/2 at x = (m+1)/Q, and the resulting
/// m / (1 + sqrt(1-x)) > m/2 + m(m+1)/(8Q).
inline GapCheck derivation_gap_check(int m, double q_value) {
  detail::require_dimension(m);
  if (!(q_value >= m + 1.0)) fail(ErrorKind::QTooSmall, "derivation_gap_check requires Q >= m + 1");
  GapCheck g;
  g.x = (m + 1.0) / q_value;
  g.lhs = g.x / 8.0;
  g.rhs = inequalities::gap_rhs(g.x);
  g.lambda_from_q = 0.5 * m + m * g.rhs;
  g.lambda_floor = 0.5 * m + m * (m + 1.0) / (8.0 * q_value);
  g.holds = g.lhs < g.rhs && g.lambda_from_q > g.lambda_floor;
  return g;
}

}  // namespace eigenlower::bounds
