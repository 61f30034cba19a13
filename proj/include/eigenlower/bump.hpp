#pragma once

// Smooth transition functions: f(t) = exp(-1/t), the step g built from it, and
// the radial cut-off psi_{a,b}(t) = 1 - g((t^2 - a^2) / (b^2 - a^2)).

#include <cmath>
#include <optional>

#include "eigenlower/error.hpp"
#include "eigenlower/numerics.hpp"

namespace eigenlower::bump {

inline double f_raw(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

namespace detail {

// Logistic sigma(x) = 1 / (1 + e^{-x}) without overflow.
inline double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// g(t) = sigma(-s) with s = 1/t - 1/(1-t), on (0, 1).
inline double exponent(double t) { return 1.0 / t - 1.0 / (1.0 - t); }

}  // namespace detail

/// g(t) = f(t) / (f(t) + f(1-t)), evaluated as 1 / (1 + e^{1/t - 1/(1-t)}) on (0, 1).
inline double g_bump(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return detail::logistic(-detail::exponent(t));
}

/// g'(t) = g (1 - g) (1/t^2 + 1/(1-t)^2), obtained by differentiating the stable form.
inline double g_bump_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double s = detail::exponent(t);
  const double g = detail::logistic(-s);
  const double one_minus_g = detail::logistic(s);
  return g * one_minus_g * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t)));
}

class TransitionProfile {
 public:
  static TransitionProfile from_ab(double a, double b) {
    if (!(a >= 0.0 && a < b)) fail(ErrorKind::InvalidArgument, "transition profile needs 0 <= a < b");
    return TransitionProfile(a, b);
  }

  /// a = rho T / c, b = rho T with 0 < rho < 1, c > 1, T = T_Sigma > 0.
  static TransitionProfile from_rho_c(double rho, double c, double t_sigma) {
    if (!(rho > 0.0 && rho < 1.0)) fail(ErrorKind::InvalidArgument, "rho must lie in (0, 1)");
    if (!(c > 1.0)) fail(ErrorKind::InvalidArgument, "c must exceed 1");
    if (!(t_sigma > 0.0)) fail(ErrorKind::InvalidArgument, "T_Sigma must be positive");
    const double b = rho * t_sigma;
    TransitionProfile out(b / c, b);
    out.rho_ = rho;
    out.c_ = c;
    out.t_sigma_ = t_sigma;
    return out;
  }

  double a() const { return a_; }
  double b() const { return b_; }
  bool has_rho_c() const { return rho_.has_value(); }
  double rho() const { return rho_.value(); }
  double c() const { return c_.value(); }
  double t_sigma() const { return t_sigma_.value(); }

 private:
  TransitionProfile(double a, double b) : a_(a), b_(b) {}

  double a_;
  double b_;
  std::optional<double> rho_;
  std::optional<double> c_;
  std::optional<double> t_sigma_;
};

/// 1 on |t| <= a, 0 on |t| >= b.
inline double psi(const TransitionProfile& profile, double t) {
  const double a2 = profile.a() * profile.a();
  const double b2 = profile.b() * profile.b();
  return 1.0 - g_bump((t * t - a2) / (b2 - a2));
}

inline double psi_deriv(const TransitionProfile& profile, double t) {
  const double a2 = profile.a() * profile.a();
  const double width = profile.b() * profile.b() - a2;
  return -g_bump_deriv((t * t - a2) / width) * 2.0 * t / width;
}

/// 16 (b^3 - a^3) / (3 (b^2 - a^2)^2), the majorant from |g'| <= 2.
inline double deriv_energy_majorant(double a, double b) {
  const double w = b * b - a * a;
  return 16.0 * (b * b * b - a * a * a) / (3.0 * w * w);
}

/// (16 / (3 rho T)) c (c^3 - 1) / (c^2 - 1)^2.
inline double deriv_energy_majorant_rho_c(double rho, double c, double t_sigma) {
  const double w = c * c - 1.0;
  return 16.0 / (3.0 * rho * t_sigma) * c * (c * c * c - 1.0) / (w * w);
}

struct DerivEnergy {
  double value = 0.0;
  double error_estimate = 0.0;
  double majorant_ab = 0.0;
  std::optional<double> majorant_rho_c;
};

/// Quadrature of the integral of psi'^2 over [a, b] together with its analytic majorants.
inline DerivEnergy deriv_energy(const TransitionProfile& profile, double abs_tol = 1e-10) {
  const auto q = numerics::integrate(
      [&](double t) {
        const double d = psi_deriv(profile, t);
        return d * d;
      },
      profile.a(), profile.b(), abs_tol);
  DerivEnergy e;
  e.value = q.value;
  e.error_estimate = q.error_estimate;
  e.majorant_ab = deriv_energy_majorant(profile.a(), profile.b());
  if (profile.has_rho_c()) {
    e.majorant_rho_c = deriv_energy_majorant_rho_c(profile.rho(), profile.c(), profile.t_sigma());
  }
  return e;
}

}  // namespace eigenlower::bump
