#pragma once

// Shared 1-D kernels: adaptive Gauss-Kronrod quadrature, explicit Runge-Kutta
// integration of initial-value problems, and bracketed root finding.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <utility>
#include <sstream>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "eigenlower/error.hpp"

namespace eigenlower::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t max_intervals = 4000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (abscissae on [0, 1]).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
double sample(F& f, double t, std::size_t& evaluations) {
  const double v = f(t);
  ++evaluations;
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand returned " << v << " at t = " << t;
    fail(ErrorKind::NonFiniteSample, os.str());
  }
  return v;
}

template <class F>
Segment gauss_kronrod_15(F& f, double lo, double hi, std::size_t& evaluations) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = sample(f, centre, evaluations);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = sample(f, centre - dx, evaluations) + sample(f, centre + dx, evaluations);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [lo, hi]. The interval
/// with the largest local error is bisected until the summed |K15 - G7|
/// estimate is at most abs_tol. Endpoints are never sampled, so integrable
/// endpoint singularities are tolerated.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureOptions& opts = {}) {
  if (!(lo <= hi)) fail(ErrorKind::InvalidArgument, "integrate requires lo <= hi");
  if (!(opts.abs_tol > 0.0)) fail(ErrorKind::InvalidArgument, "integrate requires abs_tol > 0");
  QuadratureResult result;
  if (lo == hi) {
    detail::sample(f, lo, result.evaluations);
    return result;
  }
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gauss_kronrod_15(f, lo, hi, result.evaluations));
  double total_value = heap.top().value;
  double total_error = heap.top().error;
  while (total_error > opts.abs_tol) {
    if (heap.size() >= opts.max_intervals) {
      std::ostringstream os;
      os << "subdivision limit " << opts.max_intervals << " reached with error estimate "
         << total_error << " > " << opts.abs_tol;
      fail(ErrorKind::NonConvergence, os.str());
    }
    const detail::Segment worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi)) {
      fail(ErrorKind::NonConvergence, "interval cannot be bisected further in binary64");
    }
    heap.pop();
    const auto left = detail::gauss_kronrod_15(f, worst.lo, mid, result.evaluations);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.hi, result.evaluations);
    heap.push(left);
    heap.push(right);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    if (total_error < 0.0) total_error = 0.0;
  }
  // Re-sum to shed the drift of the running updates.
  total_value = 0.0;
  total_error = 0.0;
  while (!heap.empty()) {
    total_value += heap.top().value;
    total_error += heap.top().error;
    heap.pop();
  }
  result.value = total_value;
  result.error_estimate = total_error;
  return result;
}

template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, double abs_tol) {
  return integrate(std::forward<F>(f), lo, hi, QuadratureOptions{abs_tol});
}

using State = std::vector<double>;

struct OdeNode {
  double t;
  State state;
};

struct OdeTrajectory {
  std::vector<OdeNode> nodes;

  const OdeNode& front() const { return nodes.front(); }
  const OdeNode& back() const { return nodes.back(); }
  std::size_t size() const { return nodes.size(); }
};

struct OdeOptions {
  double step_tol = 1e-9;
  std::size_t max_steps = 2'000'000;
  double initial_step = 0.0;  // 0 selects from the rhs magnitude
};

namespace detail {

template <class Rhs>
State eval_rhs(Rhs& rhs, double t, const State& y) {
  State dy = rhs(t, y);
  if (dy.size() != y.size()) fail(ErrorKind::InvalidArgument, "rhs changed the state dimension");
  for (double v : dy) {
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "rhs is not finite at t = " << t;
      fail(ErrorKind::NonFiniteState, os.str());
    }
  }
  return dy;
}

inline void axpy_into(State& out, const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  out = y;
  for (const auto& [coef, k] : terms) {
    if (coef == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * coef * (*k)[i];
  }
}

// Dormand-Prince 5(4) integrator. Steps are clamped so that every requested
// time in `stops` is hit exactly; `record_all` also keeps intermediate steps.
template <class Rhs>
OdeTrajectory dormand_prince(Rhs& rhs, double t0, const State& s0, std::span<const double> stops,
                             bool record_all, const OdeOptions& opts) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (!(opts.step_tol > 0.0)) fail(ErrorKind::InvalidArgument, "step_tol must be positive");
  for (double v : s0) {
    if (!std::isfinite(v)) fail(ErrorKind::NonFiniteState, "initial state is not finite");
  }

  OdeTrajectory traj;
  traj.nodes.push_back({t0, s0});
  if (stops.empty()) return traj;

  double t = t0;
  State y = s0;
  State k1 = eval_rhs(rhs, t, y);
  const double span_total = stops.back() - t0;

  double h = opts.initial_step;
  if (h <= 0.0) {
    double ynorm = 0.0, fnorm = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      ynorm = std::max(ynorm, std::abs(y[i]));
      fnorm = std::max(fnorm, std::abs(k1[i]));
    }
    h = 0.01 * std::max(1.0, ynorm) / std::max(fnorm, 1e-12);
    h = std::min(h, std::cbrt(opts.step_tol) * span_total);
  }

  State tmp, k2, k3, k4, k5, k6, k7, y_new;
  std::size_t steps = 0;
  for (double stop : stops) {
    if (!(stop > t)) fail(ErrorKind::InvalidArgument, "output times must increase strictly");
    while (t < stop) {
      if (++steps > opts.max_steps) {
        fail(ErrorKind::StepUnderflow, "maximum number of steps exceeded");
      }
      const bool last = t + h >= stop;
      const double h_natural = h;
      if (last) h = stop - t;
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        std::ostringstream os;
        os.precision(17);
        os << "step size underflow at t = " << t;
        fail(ErrorKind::StepUnderflow, os.str());
      }
      axpy_into(tmp, y, h, {{a21, &k1}});
      k2 = eval_rhs(rhs, t + c2 * h, tmp);
      axpy_into(tmp, y, h, {{a31, &k1}, {a32, &k2}});
      k3 = eval_rhs(rhs, t + c3 * h, tmp);
      axpy_into(tmp, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
      k4 = eval_rhs(rhs, t + c4 * h, tmp);
      axpy_into(tmp, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
      k5 = eval_rhs(rhs, t + c5 * h, tmp);
      axpy_into(tmp, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
      k6 = eval_rhs(rhs, t + h, tmp);
      axpy_into(y_new, y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      k7 = eval_rhs(rhs, t + h, y_new);

      double err = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                               e7 * k7[i]);
        const double scale = opts.step_tol * (1.0 + std::max(std::abs(y[i]), std::abs(y_new[i])));
        err = std::max(err, std::abs(ei) / scale);
      }
      if (!std::isfinite(err)) fail(ErrorKind::NonFiniteState, "error estimate is not finite");

      const double factor =
          err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        t = last ? stop : t + h;
        y.swap(y_new);
        k1.swap(k7);  // first-same-as-last
        if (record_all && t < stop) traj.nodes.push_back({t, y});
        h = last ? std::max(h_natural, h * factor) : h * factor;
      } else {
        h *= factor;
      }
    }
    traj.nodes.push_back({t, y});
  }
  return traj;
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of y' = rhs(t, y) from t0 to t1.
/// Every accepted step is recorded. Singular points must not be stepped onto;
/// callers start from a series expansion offset instead.
template <class Rhs>
OdeTrajectory integrate_ivp(Rhs&& rhs, double t0, const State& s0, double t1, double step_tol) {
  if (!(t0 < t1)) fail(ErrorKind::InvalidArgument, "integrate_ivp requires t0 < t1");
  const std::array<double, 1> stops = {t1};
  return detail::dormand_prince(rhs, t0, s0, stops, true, OdeOptions{step_tol});
}

/// Same integrator, sampled exactly at the strictly increasing `times` (> t0).
/// The returned trajectory holds t0 followed by one node per requested time.
template <class Rhs>
OdeTrajectory integrate_ivp_at(Rhs&& rhs, double t0, const State& s0, std::span<const double> times,
                               const OdeOptions& opts = {}) {
  return detail::dormand_prince(rhs, t0, s0, times, false, opts);
}

/// Classical fixed-step RK4; used to check the convergence order of the scheme.
template <class Rhs>
State integrate_ivp_fixed(Rhs&& rhs, double t0, const State& s0, double t1, std::size_t steps) {
  if (steps == 0) fail(ErrorKind::InvalidArgument, "steps must be positive");
  const double h = (t1 - t0) / static_cast<double>(steps);
  State y = s0, tmp;
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = t0 + h * static_cast<double>(n);
    const State k1 = detail::eval_rhs(rhs, t, y);
    detail::axpy_into(tmp, y, h, {{0.5, &k1}});
    const State k2 = detail::eval_rhs(rhs, t + 0.5 * h, tmp);
    detail::axpy_into(tmp, y, h, {{0.5, &k2}});
    const State k3 = detail::eval_rhs(rhs, t + 0.5 * h, tmp);
    detail::axpy_into(tmp, y, h, {{1.0, &k3}});
    const State k4 = detail::eval_rhs(rhs, t + h, tmp);
    detail::axpy_into(y, y, h, {{1.0 / 6, &k1}, {1.0 / 3, &k2}, {1.0 / 3, &k3}, {1.0 / 6, &k4}});
  }
  return y;
}

/// Bracketed root of f on [lo, hi] (TOMS 748). The returned point lies in a
/// final bracket of width <= tol.
template <class F>
double find_root(F&& f, double lo, double hi, double tol) {
  if (!(lo <= hi)) fail(ErrorKind::InvalidArgument, "find_root requires lo <= hi");
  if (!(tol > 0.0)) fail(ErrorKind::InvalidArgument, "find_root requires tol > 0");
  auto checked = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) fail(ErrorKind::NonFiniteSample, "root function is not finite");
    return v;
  };
  const double flo = checked(lo);
  const double fhi = checked(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    fail(ErrorKind::NoSignChange, "f(lo) and f(hi) have the same sign");
  }
  std::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      checked, lo, hi, flo, fhi, [tol](double a, double b) { return std::abs(b - a) <= tol; },
      max_iter);
  if (std::abs(bracket.second - bracket.first) > tol) {
    fail(ErrorKind::NonConvergence, "root bracket did not shrink to tolerance");
  }
  return 0.5 * (bracket.first + bracket.second);
}

}  // namespace eigenlower::numerics
