#pragma once

// Parallel-surface calculus on homogeneous hypersurfaces of S^{m+1}. For a
// canonical surface the Jacobian of the normal exponential map, the parallel
// mean curvature and the transported gradient are independent of the base
// point, so tube integrals reduce to |Sigma| times a 1-D radial integral.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "eigenlower/error.hpp"
#include "eigenlower/numerics.hpp"
#include "eigenlower/surfaces.hpp"

namespace eigenlower::tube {

namespace detail {

inline void require_in_tube(double t, double limit, const char* what) {
  if (!(t >= 0.0 && t < limit)) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": t = " << t << " outside [0, " << limit << ")";
    fail(ErrorKind::OutOfTubeRange, os.str());
  }
}

}  // namespace detail

inline double curvature_factor(double k, double t) { return std::cos(t) - k * std::sin(t); }

struct ParallelState {
  double t = 0.0;
  std::vector<double> factors;  // one per curvature family
  double jacobian = 1.0;
  double mean_curvature = 0.0;
};

/// theta(t) = prod_i (cos t - k_i sin t)^{mult_i}.
inline double jacobian_theta(const CurvatureData& curv, double t) {
  detail::require_in_tube(t, curv.focal_distance, "jacobian_theta");
  double theta = 1.0;
  for (const auto& f : curv.families) theta *= std::pow(curvature_factor(f.value, t), f.multiplicity);
  return theta;
}

/// Same product written as prod_i (sin(theta_i - t) / sin theta_i)^{mult_i}.
inline double jacobian_theta_angles(const CurvatureData& curv, double t) {
  detail::require_in_tube(t, curv.focal_distance, "jacobian_theta_angles");
  double theta = 1.0;
  for (const auto& f : curv.families) {
    theta *= std::pow(std::sin(f.theta - t) / std::sin(f.theta), f.multiplicity);
  }
  return theta;
}

/// H_{Sigma_t} = -(log theta)'(t) = sum_i mult_i (sin t + k_i cos t) / (cos t - k_i sin t).
inline double parallel_mean_curvature(const CurvatureData& curv, double t) {
  detail::require_in_tube(t, curv.focal_distance, "parallel_mean_curvature");
  double h = 0.0;
  for (const auto& f : curv.families) {
    h += f.multiplicity * (std::sin(t) + f.value * std::cos(t)) / curvature_factor(f.value, t);
  }
  return h;
}

/// theta'(t) / theta(t).
inline double log_jacobian_deriv(const CurvatureData& curv, double t) {
  return -parallel_mean_curvature(curv, t);
}

inline ParallelState parallel_state(const CurvatureData& curv, double t) {
  ParallelState s;
  s.t = t;
  s.jacobian = jacobian_theta(curv, t);
  s.mean_curvature = parallel_mean_curvature(curv, t);
  for (const auto& f : curv.families) s.factors.push_back(curvature_factor(f.value, t));
  return s;
}

struct FactorBound {
  double min_factor = 1.0;
  double lemma_cp_floor = 1.0;
};

/// Smallest curvature factor at t against the floor sin(T_Sigma - t) / sin T_Sigma.
inline FactorBound curvature_factor_bound(const CurvatureData& curv, double t) {
  detail::require_in_tube(t, curv.t_sigma, "curvature_factor_bound");
  FactorBound b;
  b.min_factor = std::numeric_limits<double>::infinity();
  for (const auto& f : curv.families) b.min_factor = std::min(b.min_factor, curvature_factor(f.value, t));
  b.lemma_cp_floor = std::sin(curv.t_sigma - t) / std::sin(curv.t_sigma);
  return b;
}

/// sin^2(T_Sigma) / sin^2(T_Sigma - t): worst-case growth of a tangential gradient.
inline double gradient_amplification(double t_sigma, double t) {
  detail::require_in_tube(t, t_sigma, "gradient_amplification");
  const double r = std::sin(t_sigma) / std::sin(t_sigma - t);
  return r * r;
}

/// Exact |grad^T phi~|^2 at distance t, for a gradient with components
/// grad_components[j] along principal directions. Components are assigned to
/// families in order, mult_i consecutive components per family.
inline double exact_transported_gradient(const CurvatureData& curv,
                                         std::span<const double> grad_components, double t) {
  detail::require_in_tube(t, curv.focal_distance, "exact_transported_gradient");
  if (static_cast<int>(grad_components.size()) != curv.dimension()) {
    fail(ErrorKind::InvalidArgument, "one gradient component per principal direction required");
  }
  double sum = 0.0;
  std::size_t j = 0;
  for (const auto& f : curv.families) {
    const double factor = curvature_factor(f.value, t);
    for (int r = 0; r < f.multiplicity; ++r, ++j) {
      sum += grad_components[j] * grad_components[j] / (factor * factor);
    }
  }
  return sum;
}

struct SpruckWindow {
  double epsilon = 0.0;
  double t_epsilon = 0.0;  // arctan(epsilon / Lambda^2)
};

struct SpruckReport {
  SpruckWindow window;
  double max_mean_curvature = 0.0;
  double bound = 0.0;  // 2 Lambda
  std::size_t samples = 0;
  bool passed = false;
  double margin() const { return bound - max_mean_curvature; }
};

/// Samples H_{Sigma_t} uniformly on [0, T_eps] and compares with 2 Lambda.
/// Requires 0 < eps <= Lambda / 2 and Lambda >= sqrt(m).
inline SpruckReport spruck_check(const CurvatureData& curv, double epsilon, std::size_t samples = 1000) {
  const double lambda = curv.big_lambda;
  const int m = curv.dimension();
  constexpr double rel = 1e-12;
  if (!(epsilon > 0.0) || epsilon > 0.5 * lambda * (1.0 + rel)) {
    fail(ErrorKind::HypothesisViolated, "spruck_check requires 0 < epsilon <= Lambda/2");
  }
  if (lambda * lambda < m * (1.0 - rel)) {
    fail(ErrorKind::HypothesisViolated, "spruck_check requires Lambda >= sqrt(m)");
  }
  if (samples < 2) fail(ErrorKind::InvalidArgument, "spruck_check needs at least 2 samples");
  SpruckReport r;
  r.window = {epsilon, std::atan(epsilon / (lambda * lambda))};
  r.bound = 2.0 * lambda;
  r.samples = samples;
  r.max_mean_curvature = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = r.window.t_epsilon * static_cast<double>(i) / static_cast<double>(samples - 1);
    r.max_mean_curvature = std::max(r.max_mean_curvature, parallel_mean_curvature(curv, t));
  }
  r.passed = r.max_mean_curvature <= r.bound;
  return r;
}

/// |Sigma| * integral_0^{t_hi} radial(t) theta(t) dt, the tube integral of a
/// function that depends on the normal distance only.
template <class Radial>
numerics::QuadratureResult tube_integral(const CanonicalSurface& surface, const CurvatureData& curv,
                                         Radial&& radial, double t_hi, double abs_tol = 1e-10) {
  if (!(t_hi > 0.0 && t_hi <= curv.focal_distance)) {
    fail(ErrorKind::OutOfTubeRange, "tube_integral requires 0 < t_hi <= focal_distance");
  }
  const double area = surface_area(surface);
  auto q = numerics::integrate([&](double t) { return radial(t) * jacobian_theta(curv, t); }, 0.0, t_hi,
                               abs_tol / area);
  q.value *= area;
  q.error_estimate *= area;
  return q;
}

struct DerivativeCheck {
  double finite_difference = 0.0;
  double formula = 0.0;
  double tolerance = 1e-6;
  bool passed() const {
    return std::abs(finite_difference - formula) <= tolerance * std::max(1.0, std::abs(formula));
  }
};

/// Compares d/dt (|Sigma| radial(t) theta(t)) by central differences against
/// |Sigma| theta(t) (radial'(t) - radial(t) H_{Sigma_t}).
template <class Radial, class RadialDeriv>
DerivativeCheck surface_integral_derivative_check(const CanonicalSurface& surface, const CurvatureData& curv,
                                                  Radial&& radial, RadialDeriv&& radial_deriv, double t,
                                                  double step = 1e-5, double tolerance = 1e-6) {
  if (!(t + step < curv.focal_distance)) {
    fail(ErrorKind::OutOfTubeRange, "derivative stencil leaves the tube");
  }
  const double area = surface_area(surface);
  auto level = [&](double s) {
    // The factor product extends smoothly to small negative t (the other side).
    double theta = 1.0;
    for (const auto& f : curv.families) theta *= std::pow(curvature_factor(f.value, s), f.multiplicity);
    return area * radial(s) * theta;
  };
  DerivativeCheck c;
  c.tolerance = tolerance;
  c.finite_difference = (level(t + step) - level(t - step)) / (2.0 * step);
  c.formula = area * jacobian_theta(curv, t) * (radial_deriv(t) - radial(t) * parallel_mean_curvature(curv, t));
  return c;
}

}  // namespace eigenlower::tube
