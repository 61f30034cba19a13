#pragma once

// Harmonic extension of a first eigenfunction into a tube domain of a Clifford
// torus, its Rayleigh quotient Q, and the constants and differential
// inequalities that turn Q into an eigenvalue bound.
//
// On the component Omega of S^{m+1} \ Sigma in which one sphere factor
// (dimension c) collapses at the focal distance t_f, the harmonic extension of
// a degree-1 spherical harmonic phi on a factor separates as u = h(t) phi~,
// with h'' + (theta'/theta) h' - mu(t) h = 0. The ODE is solved in
// tau = t_f - t, starting from the regular Frobenius branch at tau0 > 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "eigenlower/bump.hpp"
#include "eigenlower/error.hpp"
#include "eigenlower/numerics.hpp"
#include "eigenlower/surfaces.hpp"
#include "eigenlower/tube.hpp"

namespace eigenlower::rayleigh {

enum class Factor { P, Q };

inline const char* to_string(Factor f) { return f == Factor::P ? "p" : "q"; }

/// Which sphere factor collapses inside Omega, and which factor carries phi.
struct ExtensionConfig {
  Factor collapsing = Factor::P;
  Factor eigenfunction = Factor::P;
};

/// Geometry of one tube side of a Clifford torus, with curvatures taken with
/// respect to the unit normal pointing into Omega.
struct TubeSide {
  CanonicalSurface surface;
  ExtensionConfig config;
  CurvatureData curvature;
  int collapsing_dim = 0;
  int other_dim = 0;
  int eigen_dim = 0;
  double lambda1 = 0.0;
  double t_focal = 0.0;
  double area = 0.0;
  // Offsets theta_i - t_f and sin(theta_i) per family; the collapsing family has offset 0.
  std::vector<double> offsets;
  std::vector<double> sin_angles;
  std::vector<int> multiplicities;
  std::size_t eigen_family = 0;
  // Integral of <A grad phi, grad phi> over Sigma for the normalized phi.
  double sign_term = 0.0;

  bool satisfies_sign_convention() const { return sign_term >= 0.0; }

  /// theta as a function of tau = t_f - t.
  double theta(double tau) const {
    double th = 1.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      th *= std::pow(std::sin(offsets[i] + tau) / sin_angles[i], multiplicities[i]);
    }
    return th;
  }

  /// (d theta / dt) / theta at t = t_f - tau.
  double log_theta_deriv(double tau) const {
    double s = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      s -= multiplicities[i] / std::tan(offsets[i] + tau);
    }
    return s;
  }

  /// mu = lambda1 / factor_e^2: lambda1 transported to the parallel surface.
  double mu(double tau) const {
    const double f = std::sin(offsets[eigen_family] + tau) / sin_angles[eigen_family];
    return lambda1 / (f * f);
  }
};

inline int factor_dim(const CanonicalSurface& s, Factor f) { return f == Factor::P ? s.p : s.q; }

inline TubeSide make_tube_side(const CanonicalSurface& surface, ExtensionConfig config) {
  if (surface.kind != SurfaceKind::Clifford) {
    fail(ErrorKind::InvalidArgument, "harmonic extension profiles are defined for Clifford tori");
  }
  TubeSide side;
  side.surface = surface;
  side.config = config;
  const auto base = clifford(surface.p, surface.q).curvature;
  side.curvature = config.collapsing == Factor::Q ? base : opposite_normal(base);
  side.collapsing_dim = factor_dim(surface, config.collapsing);
  side.other_dim = surface.m - side.collapsing_dim;
  side.eigen_dim = factor_dim(surface, config.eigenfunction);
  side.lambda1 = analytic_lambda1(surface);
  side.t_focal = side.curvature.focal_distance;
  side.area = surface_area(surface);
  // Families are ordered (p, q).
  const std::size_t collapsing_index = config.collapsing == Factor::P ? 0 : 1;
  side.eigen_family = config.eigenfunction == Factor::P ? 0 : 1;
  for (std::size_t i = 0; i < side.curvature.families.size(); ++i) {
    const auto& f = side.curvature.families[i];
    side.offsets.push_back(i == collapsing_index ? 0.0 : f.theta - side.t_focal);
    side.sin_angles.push_back(std::sin(f.theta));
    side.multiplicities.push_back(f.multiplicity);
  }
  side.sign_term = side.curvature.families[side.eigen_family].value * side.lambda1;
  return side;
}

/// For phi on the given factor, the side of Sigma on which the integral of
/// <A grad phi, grad phi> is nonnegative. It is the side on which that factor collapses.
inline ExtensionConfig sign_convention_config(const CanonicalSurface& surface, Factor eigenfunction = Factor::P) {
  for (Factor collapsing : {Factor::P, Factor::Q}) {
    const ExtensionConfig config{collapsing, eigenfunction};
    if (make_tube_side(surface, config).satisfies_sign_convention()) return config;
  }
  fail(ErrorKind::HypothesisViolated, "no side satisfies the sign convention");
}

/// kappa with phi = kappa * x_1 on the eigen factor of radius r: the coordinate
/// function has mean square r^2 / (d + 1), so kappa^2 r^2 |Sigma| / (d + 1) = 1.
inline double eigenfunction_scale(const TubeSide& side) {
  const double r2 = static_cast<double>(side.eigen_dim) / side.surface.m;
  return std::sqrt((side.eigen_dim + 1.0) / (r2 * side.area));
}

/// Mean of x_1^2 over the unit sphere S^d by 1-D quadrature in the polar angle.
inline double coordinate_mean_square(int d, double abs_tol = 1e-13) {
  if (d < 1) fail(ErrorKind::InvalidDimension, "coordinate_mean_square requires d >= 1");
  if (d == 1) {
    const auto num = numerics::integrate([](double a) { return std::cos(a) * std::cos(a); }, 0.0,
                                         2.0 * std::numbers::pi, abs_tol);
    return num.value / (2.0 * std::numbers::pi);
  }
  const auto num = numerics::integrate(
      [d](double a) { return std::cos(a) * std::cos(a) * std::pow(std::sin(a), d - 1); }, 0.0,
      std::numbers::pi, abs_tol);
  const auto den = numerics::integrate([d](double a) { return std::pow(std::sin(a), d - 1); }, 0.0,
                                       std::numbers::pi, abs_tol);
  return num.value / den.value;
}

struct ProfileOptions {
  double refine_tol = 1e-6;  // |Q_N - Q_{N/2}| stopping threshold
  double ode_tol = 1e-11;
  double quad_tol = 1e-11;
  double tau0 = 1e-6;
  std::size_t initial_cells = 64;
  std::size_t max_cells = std::size_t{1} << 14;
};

/// Nodes run from t = 0 (index 0) to t = t_f - tau0 (last index).
struct HarmonicExtensionProfile {
  TubeSide side;
  double tau0 = 0.0;
  std::vector<double> tau;
  std::vector<double> grid;  // t = t_f - tau
  std::vector<double> h;
  std::vector<double> h_prime;   // dh/dt
  std::vector<double> h_second;  // d^2h/dt^2 from the ODE
  std::vector<double> mu;
  std::vector<double> theta;
  std::vector<double> log_theta_deriv;
  std::vector<double> q_history;  // Q at each refinement level
  double quad_tol = 1e-11;

  const CanonicalSurface& surface() const { return side.surface; }
  std::size_t cells() const { return grid.size() - 1; }

  struct Sample {
    double h;
    double h_prime;
  };

  /// Quintic Hermite interpolation of h and dh/dt at tau in [tau0, t_f].
  Sample at_tau(double tau_value) const {
    const std::size_t n = cells();
    if (!(tau_value >= tau.back() * (1.0 - 1e-15) && tau_value <= tau.front() * (1.0 + 1e-15))) {
      fail(ErrorKind::OutOfTubeRange, "profile evaluated outside its grid");
    }
    // tau decreases with the index; cell j spans [tau[j+1], tau[j]].
    const double width = (tau.front() - tau.back()) / static_cast<double>(n);
    auto j = static_cast<std::size_t>((tau.front() - tau_value) / width);
    j = std::min(j, n - 1);
    // Local coordinate s in [0, 1] runs from node j+1 (s=0) to node j (s=1) in tau.
    const double dt = tau[j] - tau[j + 1];
    const double s = std::clamp((tau_value - tau[j + 1]) / dt, 0.0, 1.0);
    const double y0 = h[j + 1], y1 = h[j];
    // Derivatives in tau: dh/dtau = -dh/dt, d2h/dtau2 = d2h/dt2.
    const double d0 = -h_prime[j + 1] * dt, d1 = -h_prime[j] * dt;
    const double e0 = h_second[j + 1] * dt * dt, e1 = h_second[j] * dt * dt;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double v = y0 * (1 - 10 * s3 + 15 * s4 - 6 * s5) + d0 * (s - 6 * s3 + 8 * s4 - 3 * s5) +
                     e0 * 0.5 * (s2 - 3 * s3 + 3 * s4 - s5) + y1 * (10 * s3 - 15 * s4 + 6 * s5) +
                     d1 * (-4 * s3 + 7 * s4 - 3 * s5) + e1 * 0.5 * (s3 - 2 * s4 + s5);
    const double dv = y0 * (-30 * s2 + 60 * s3 - 30 * s4) + d0 * (1 - 18 * s2 + 32 * s3 - 15 * s4) +
                      e0 * 0.5 * (2 * s - 9 * s2 + 12 * s3 - 5 * s4) + y1 * (30 * s2 - 60 * s3 + 30 * s4) +
                      d1 * (-12 * s2 + 28 * s3 - 15 * s4) + e1 * 0.5 * (3 * s2 - 8 * s3 + 5 * s4);
    return {v, -dv / dt};
  }

  Sample at(double t) const { return at_tau(side.t_focal - t); }

  /// Max over interior nodes of |h'' + (theta'/theta) h' - mu h| with h'' from a
  /// finite-difference stencil of h', scaled by 1 + |mu h| + |(theta'/theta) h'|.
  double max_residual() const {
    const std::size_t n = cells();
    const double dt = grid[1] - grid[0];
    double worst = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      double hpp;
      const auto& d = h_prime;
      if (i >= 2 && i + 2 <= n) {
        hpp = (-d[i + 2] + 8.0 * d[i + 1] - 8.0 * d[i - 1] + d[i - 2]) / (12.0 * dt);
      } else if (i == 1) {
        hpp = (-3.0 * d[0] - 10.0 * d[1] + 18.0 * d[2] - 6.0 * d[3] + d[4]) / (12.0 * dt);
      } else {
        hpp = (3.0 * d[n] + 10.0 * d[n - 1] - 18.0 * d[n - 2] + 6.0 * d[n - 3] - d[n - 4]) / (12.0 * dt);
      }
      const double a = log_theta_deriv[i] * h_prime[i];
      const double b = mu[i] * h[i];
      const double res = std::abs(hpp + a - b) / (1.0 + std::abs(a) + std::abs(b));
      worst = std::max(worst, res);
    }
    return worst;
  }
};

namespace detail {

struct Frobenius {
  double h;
  double h_tau;
};

// Regular branch at the focal set. phi on the collapsing factor: h = tau + a tau^3
// with a = (3n + 2c) / (6 (3 + c)). phi on the other factor: h = 1 + mu_f tau^2 / (2 (c + 1)).
inline Frobenius frobenius_start(const TubeSide& side, double tau0) {
  const double c = side.collapsing_dim;
  const double n = side.other_dim;
  if (side.config.eigenfunction == side.config.collapsing) {
    const double a = (3.0 * n + 2.0 * c) / (6.0 * (3.0 + c));
    return {tau0 + a * tau0 * tau0 * tau0, 1.0 + 3.0 * a * tau0 * tau0};
  }
  const double coef = side.mu(0.0) / (2.0 * (c + 1.0));
  return {1.0 + coef * tau0 * tau0, 2.0 * coef * tau0};
}

inline numerics::State radial_rhs(const TubeSide& side, double tau, const numerics::State& y) {
  // In tau: h_tt = (theta'/theta) h_t + mu h, where theta'/theta is the t-derivative.
  return {y[1], side.log_theta_deriv(tau) * y[1] + side.mu(tau) * y[0]};
}

template <class F>
numerics::OdeTrajectory guarded_ivp(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::StepUnderflow || e.kind() == ErrorKind::NonFiniteState) {
      fail(ErrorKind::OdeSingularity, std::string("radial ODE failed before t = 0: ") + e.what());
    }
    throw;
  }
}

inline HarmonicExtensionProfile solve_on_grid(const TubeSide& side, std::size_t cells, const ProfileOptions& opts) {
  HarmonicExtensionProfile prof;
  prof.side = side;
  prof.tau0 = opts.tau0;
  prof.quad_tol = opts.quad_tol;
  const double dtau = (side.t_focal - opts.tau0) / static_cast<double>(cells);
  prof.tau.resize(cells + 1);
  prof.grid.resize(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    prof.tau[i] = i == 0 ? side.t_focal : opts.tau0 + static_cast<double>(cells - i) * dtau;
    prof.grid[i] = i == 0 ? 0.0 : side.t_focal - prof.tau[i];
  }
  std::vector<double> stops;
  stops.reserve(cells);
  for (std::size_t i = cells; i-- > 0;) stops.push_back(prof.tau[i]);

  const auto start = frobenius_start(side, opts.tau0);
  numerics::OdeOptions ode;
  ode.step_tol = opts.ode_tol;
  ode.initial_step = 0.1 * opts.tau0;
  const auto traj = guarded_ivp([&] {
    return numerics::integrate_ivp_at(
        [&side](double tau, const numerics::State& y) { return radial_rhs(side, tau, y); }, opts.tau0,
        numerics::State{start.h, start.h_tau}, stops, ode);
  });

  const double scale = 1.0 / traj.back().state[0];
  if (!std::isfinite(scale) || scale <= 0.0) fail(ErrorKind::OdeSingularity, "radial solution vanishes at t = 0");
  prof.h.resize(cells + 1);
  prof.h_prime.resize(cells + 1);
  prof.h_second.resize(cells + 1);
  prof.mu.resize(cells + 1);
  prof.theta.resize(cells + 1);
  prof.log_theta_deriv.resize(cells + 1);
  // traj node k sits at tau[cells - k].
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const std::size_t i = cells - k;
    prof.h[i] = traj.nodes[k].state[0] * scale;
    prof.h_prime[i] = -traj.nodes[k].state[1] * scale;
    prof.mu[i] = side.mu(prof.tau[i]);
    prof.theta[i] = side.theta(prof.tau[i]);
    prof.log_theta_deriv[i] = side.log_theta_deriv(prof.tau[i]);
    prof.h_second[i] = prof.mu[i] * prof.h[i] - prof.log_theta_deriv[i] * prof.h_prime[i];
  }
  prof.h[0] = 1.0;
  return prof;
}

}  // namespace detail

struct RayleighReport {
  double q_value = 0.0;
  double dirichlet_energy = 0.0;
  double l2_mass = 0.0;
  double flux_energy = 0.0;  // -h'(0): boundary-flux form of the energy
  double lambda_lower = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double sign_term = 0.0;
  double q_margin() const;  // Q - (m + 1)
  int m = 0;
};

inline double RayleighReport::q_margin() const { return q_value - (m + 1.0); }

struct EnergyMass {
  double energy = 0.0;
  double mass = 0.0;
};

/// Energy and mass integrals of the profile over [0, t_f], with the tail
/// [t_f - tau0, t_f] from the leading Frobenius behaviour theta ~ tau^c.
inline EnergyMass profile_integrals(const HarmonicExtensionProfile& prof) {
  const auto& side = prof.side;
  EnergyMass out;
  const std::size_t n = prof.cells();
  const double cell_tol = prof.quad_tol / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = prof.tau[j + 1], hi = prof.tau[j];
    out.energy += numerics::integrate(
                      [&](double tau) {
                        const auto s = prof.at_tau(tau);
                        return (s.h_prime * s.h_prime + side.mu(tau) * s.h * s.h) * side.theta(tau);
                      },
                      lo, hi, cell_tol)
                      .value;
    out.mass += numerics::integrate(
                    [&](double tau) {
                      const double v = prof.at_tau(tau).h;
                      return v * v * side.theta(tau);
                    },
                    lo, hi, cell_tol)
                    .value;
  }
  const std::size_t last = n;
  const double tail = prof.theta[last] * prof.tau0 / (side.collapsing_dim + 1.0);
  out.mass += prof.h[last] * prof.h[last] * tail;
  out.energy += (prof.h_prime[last] * prof.h_prime[last] + prof.mu[last] * prof.h[last] * prof.h[last]) * tail;
  return out;
}

/// Solves the radial problem on successively doubled grids until Q is Cauchy.
inline HarmonicExtensionProfile solve_harmonic_profile(const CanonicalSurface& surface, ExtensionConfig config,
                                                       const ProfileOptions& opts = {}) {
  if (!(opts.refine_tol > 0.0)) fail(ErrorKind::InvalidArgument, "refinement tolerance must be positive");
  const TubeSide side = make_tube_side(surface, config);
  std::vector<double> history;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t cells = opts.initial_cells; cells <= opts.max_cells; cells *= 2) {
    auto prof = detail::solve_on_grid(side, cells, opts);
    const auto em = profile_integrals(prof);
    const double q = em.energy / em.mass;
    history.push_back(q);
    if (std::isfinite(previous) && std::abs(q - previous) < opts.refine_tol) {
      prof.q_history = std::move(history);
      return prof;
    }
    previous = q;
  }
  std::ostringstream os;
  os.precision(17);
  os << "Q not Cauchy under grid refinement for " << surface.name() << "; last values";
  for (double q : history) os << ' ' << q;
  fail(ErrorKind::NonConvergence, os.str());
}

inline HarmonicExtensionProfile solve_harmonic_profile(const CanonicalSurface& surface, double refine_tol) {
  ProfileOptions opts;
  opts.refine_tol = refine_tol;
  return solve_harmonic_profile(surface, sign_convention_config(surface), opts);
}

/// Independent route to energy and mass: the integrals ride along the shooting ODE.
inline EnergyMass augmented_ode_integrals(const CanonicalSurface& surface, ExtensionConfig config,
                                          double ode_tol = 1e-12, double tau0 = 1e-6) {
  const TubeSide side = make_tube_side(surface, config);
  const auto start = detail::frobenius_start(side, tau0);
  const double tail = side.theta(tau0) * tau0 / (side.collapsing_dim + 1.0);
  numerics::State s0 = {start.h, start.h_tau,
                        (start.h_tau * start.h_tau + side.mu(tau0) * start.h * start.h) * tail,
                        start.h * start.h * tail};
  const std::array<double, 1> stop = {side.t_focal};
  numerics::OdeOptions ode;
  ode.step_tol = ode_tol;
  ode.initial_step = 0.1 * tau0;
  const auto traj = detail::guarded_ivp([&] {
    return numerics::integrate_ivp_at(
        [&side](double tau, const numerics::State& y) {
          const double th = side.theta(tau);
          return numerics::State{y[1], side.log_theta_deriv(tau) * y[1] + side.mu(tau) * y[0],
                                 (y[1] * y[1] + side.mu(tau) * y[0] * y[0]) * th, y[0] * y[0] * th};
        },
        tau0, s0, stop, ode);
  });
  const auto& y = traj.back().state;
  const double inv2 = 1.0 / (y[0] * y[0]);
  return {y[2] * inv2, y[3] * inv2};
}

/// m / (1 + sqrt(1 - (m+1)/Q)).
inline double lambda_from_q(int m, double q_value) {
  if (!(q_value >= m + 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "Q = " << q_value << " is below m + 1 = " << m + 1;
    fail(ErrorKind::QTooSmall, os.str());
  }
  return m / (1.0 + std::sqrt(1.0 - (m + 1.0) / q_value));
}

struct BetaOptimum {
  double t0 = 0.0;
  double beta_at_t0 = 0.0;  // from the definition of beta
  double beta_closed = 0.0;  // 2 / (1 + sqrt(1 - (m+1)/Q))
  double critical_residual = 0.0;  // Q (m+1) t0^2 + 2 Q t0 + 1
};

/// beta(t) = 1 - 1/(Q t + 1) - 1/((m+1)(Q t^2 + t)).
inline double beta(int m, double q_value, double t) {
  return 1.0 - 1.0 / (q_value * t + 1.0) - 1.0 / ((m + 1.0) * (q_value * t * t + t));
}

inline BetaOptimum beta_optimizer(int m, double q_value) {
  if (!(q_value >= m + 1.0)) fail(ErrorKind::QTooSmall, "beta_optimizer requires Q >= m + 1");
  const double s = std::sqrt(1.0 - (m + 1.0) / q_value);
  BetaOptimum b;
  b.t0 = (-1.0 - s) / (m + 1.0);
  b.beta_closed = 2.0 / (1.0 + s);
  const double denom = q_value * b.t0 + 1.0;
  // At Q = m + 1 the definition is 0/0 at t0; the critical-point identity gives -2 / ((m+1) t0).
  b.beta_at_t0 = denom == 0.0 ? -2.0 / ((m + 1.0) * b.t0) : beta(m, q_value, b.t0);
  b.critical_residual = q_value * (m + 1.0) * b.t0 * b.t0 + 2.0 * q_value * b.t0 + 1.0;
  return b;
}

struct PolReport {
  double threshold = 0.0;  // Q* = (m+1) lambda^2 / (m (2 lambda - m))
  double discriminant = 0.0;
  double minimum = 0.0;  // min over t of the quadratic
  bool passed = false;
};

/// Nonnegativity of (2 lambda - m) Q t^2 + 2 lambda t + m/(m+1) for all t.
inline PolReport verify_pol(int m, double lambda1, double q_value) {
  if (!(lambda1 > 0.5 * m)) fail(ErrorKind::InvalidArgument, "verify_pol requires lambda1 > m/2");
  PolReport r;
  const double a = (2.0 * lambda1 - m) * q_value;
  r.threshold = (m + 1.0) * lambda1 * lambda1 / (m * (2.0 * lambda1 - m));
  r.discriminant = 4.0 * lambda1 * lambda1 - 4.0 * a * m / (m + 1.0);
  r.minimum = m / (m + 1.0) - lambda1 * lambda1 / a;
  r.passed = q_value >= r.threshold;
  return r;
}

/// 32 / (3 arctan(1/k_max)) + lambda1 / sqrt(1 + k_max^2).
inline double c1_constant(double k_max, double lambda1) {
  if (!(k_max > 0.0)) fail(ErrorKind::InvalidCurvature, "C1 requires k_max > 0");
  return 32.0 / (3.0 * std::atan(1.0 / k_max)) + lambda1 / std::sqrt(1.0 + k_max * k_max);
}

/// The upper chain for C1 ending at 11 Lambda + m + 11.
struct C1Chain {
  std::array<double, 5> values{};
  bool hypotheses = false;  // 1 <= k_max^2 <= (m-1)/m Lambda^2 and lambda1 <= m
  bool holds = false;
};

inline C1Chain c1_chain(int m, double big_lambda, double k_max, double lambda1) {
  C1Chain c;
  const double k = k_max;
  c.values[0] = c1_constant(k, lambda1);
  c.values[1] = 32.0 * (1.0 + k * k) / (3.0 * k) + lambda1 / std::sqrt(1.0 + k * k);
  c.values[2] = 32.0 * k / 3.0 + (m + 11.0) / k;
  c.values[3] = 32.0 * big_lambda / 3.0 + (m + 11.0) / k;
  c.values[4] = 11.0 * big_lambda + m + 11.0;
  constexpr double rel = 1e-12;
  c.hypotheses = k >= 1.0 * (1.0 - rel) && k * k <= (m - 1.0) / m * big_lambda * big_lambda * (1.0 + rel) &&
                 lambda1 <= m * (1.0 + rel);
  c.holds = c.values[0] <= c.values[1] * (1.0 + rel) && c.values[1] < c.values[2] &&
            c.values[2] <= c.values[3] * (1.0 + rel) && c.values[3] < c.values[4];
  return c;
}

/// arctan(1 / (2 (Lambda + C1))) / (2 C1).
inline double c2_constant(double big_lambda, double c1) {
  if (!(c1 > 0.0 && big_lambda > 0.0)) fail(ErrorKind::InvalidArgument, "C2 requires C1 > 0 and Lambda > 0");
  return std::atan(1.0 / (2.0 * (big_lambda + c1))) / (2.0 * c1);
}

/// The lower chain for C2 ending at 1 / (4 (12 Lambda + m + 11)^2 + 1).
struct C2Chain {
  std::array<double, 4> values{};
  bool holds = false;
};

inline C2Chain c2_chain(int m, double big_lambda, double c1) {
  C2Chain c;
  const double y = 2.0 * big_lambda + 2.0 * c1;
  const double outer = 12.0 * big_lambda + m + 11.0;
  c.values[0] = c2_constant(big_lambda, c1);
  c.values[1] = y / (2.0 * c1 * (y * y + 1.0));
  c.values[2] = 1.0 / (y * y + 1.0);
  c.values[3] = 1.0 / (4.0 * outer * outer + 1.0);
  c.holds = c.values[0] >= c.values[1] && c.values[1] >= c.values[2] && c.values[2] > c.values[3];
  return c;
}

/// Q, energy, mass, the eigenvalue bound derived from Q and the constants C1, C2.
/// lambda_lower is NaN when Q < m + 1.
inline RayleighReport compute_rayleigh(const HarmonicExtensionProfile& prof) {
  const auto& side = prof.side;
  const auto em = profile_integrals(prof);
  RayleighReport r;
  r.m = side.surface.m;
  r.dirichlet_energy = em.energy;
  r.l2_mass = em.mass;
  r.q_value = em.energy / em.mass;
  r.flux_energy = -prof.h_prime[0];
  r.sign_term = side.sign_term;
  r.lambda_lower = r.q_value >= r.m + 1.0 ? lambda_from_q(r.m, r.q_value) : std::numeric_limits<double>::quiet_NaN();
  r.c1 = c1_constant(side.curvature.k_max, side.lambda1);
  r.c2 = c2_constant(side.curvature.big_lambda, r.c1);
  return r;
}

struct EtaReport {
  double eta0 = 0.0;
  double eta_prime0_stencil = 0.0;
  double epsilon = 0.0;
  double t_epsilon = 0.0;
  double max_damped_lhs = 0.0;  // max of eta'' + 2 Lambda eta' on [0, T_eps]
  double damped_bound = 0.0;    // 2 C1
  bool damped_holds = false;
  double max_integrated_gap = 0.0;  // max of eta' - (2 C1 (1 - e^{-2 Lambda t}) / (2 Lambda) - e^{-2 Lambda t})
  bool integrated_holds = false;
  double mass_floor = 0.0;  // T_eps / 2
  double chain_floor = 0.0;  // T_eps (1 - (Lambda + C1) T_eps)
  bool mass_floor_holds = false;
  std::size_t samples = 0;
};

/// eta(t) = mass of the sub-tube {d > t}.
inline double eta(const HarmonicExtensionProfile& prof, double l2_mass, double t) {
  if (t == 0.0) return l2_mass;
  const auto& side = prof.side;
  const double inner = numerics::integrate(
                           [&](double s) {
                             const double v = prof.at(s).h;
                             return v * v * side.theta(side.t_focal - s);
                           },
                           0.0, t, prof.quad_tol)
                           .value;
  return l2_mass - inner;
}

/// Checks eta'(0) = -1, eta'' + 2 Lambda eta' <= 2 C1 on [0, T_eps], its
/// integrated form, and eta(0) > T_eps / 2. epsilon <= 0 selects
/// epsilon = Lambda^2 / (2 (Lambda + C1)).
inline EtaReport eta_verification(const HarmonicExtensionProfile& prof, double c1, double epsilon = 0.0,
                                  std::size_t samples = 1000) {
  const auto& side = prof.side;
  const double big_lambda = side.curvature.big_lambda;
  EtaReport r;
  r.samples = samples;
  r.epsilon = epsilon > 0.0 ? epsilon : big_lambda * big_lambda / (2.0 * (big_lambda + c1));
  r.t_epsilon = std::atan(r.epsilon / (big_lambda * big_lambda));
  if (!(r.t_epsilon < prof.grid.back())) {
    fail(ErrorKind::OutOfTubeRange, "T_eps exceeds the resolved tube depth");
  }
  const auto em = profile_integrals(prof);
  r.eta0 = em.mass;
  constexpr double delta = 1e-3;
  const double eta1 = eta(prof, em.mass, delta);
  const double eta2 = eta(prof, em.mass, 2.0 * delta);
  r.eta_prime0_stencil = (-3.0 * r.eta0 + 4.0 * eta1 - eta2) / (2.0 * delta);

  r.damped_bound = 2.0 * c1;
  r.max_damped_lhs = -std::numeric_limits<double>::infinity();
  r.max_integrated_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = r.t_epsilon * static_cast<double>(i) / static_cast<double>(samples - 1);
    const auto s = prof.at(t);
    const double tau = side.t_focal - t;
    const double th = side.theta(tau);
    const double eta_p = -s.h * s.h * th;
    const double eta_pp = -th * (2.0 * s.h * s.h_prime + s.h * s.h * side.log_theta_deriv(tau));
    r.max_damped_lhs = std::max(r.max_damped_lhs, eta_pp + 2.0 * big_lambda * eta_p);
    const double decay = std::exp(-2.0 * big_lambda * t);
    const double rhs2 = 2.0 * c1 * (-std::expm1(-2.0 * big_lambda * t)) / (2.0 * big_lambda) - decay;
    r.max_integrated_gap = std::max(r.max_integrated_gap, eta_p - rhs2);
  }
  r.damped_holds = r.max_damped_lhs <= r.damped_bound + 1e-6;
  r.integrated_holds = r.max_integrated_gap <= 1e-9;
  r.mass_floor = 0.5 * r.t_epsilon;
  r.chain_floor = r.t_epsilon * (1.0 - (big_lambda + c1) * r.t_epsilon);
  r.mass_floor_holds = r.eta0 > r.mass_floor;
  return r;
}

struct TestFnEnergy {
  double exact = 0.0;
  double exact_derivative_part = 0.0;
  double exact_gradient_part = 0.0;
  double majorant = 0.0;
  double majorant_derivative_part = 0.0;  // (16 / (3 rho T)) c (c^3 - 1) / (c^2 - 1)^2
  double majorant_gradient_part = 0.0;    // lambda1 sin T sin(rho T) / sin((1 - rho) T)
};

/// Energy of the cut-off extension v = psi_{rho,c}(t) phi~ on the tube side,
/// normalized by the integral of phi^2 over Sigma.
inline TestFnEnergy testfn_energy(const TubeSide& side, double rho, double c, double abs_tol = 1e-11) {
  const double t_sigma = side.curvature.t_sigma;
  const auto profile = bump::TransitionProfile::from_rho_c(rho, c, t_sigma);
  auto theta_t = [&](double t) { return side.theta(side.t_focal - t); };
  auto mu_t = [&](double t) { return side.mu(side.t_focal - t); };
  TestFnEnergy e;
  e.exact_derivative_part = numerics::integrate(
                                [&](double t) {
                                  const double d = bump::psi_deriv(profile, t);
                                  return d * d * theta_t(t);
                                },
                                profile.a(), profile.b(), abs_tol)
                                .value;
  auto grad = [&](double t) {
    const double v = bump::psi(profile, t);
    return v * v * mu_t(t) * theta_t(t);
  };
  e.exact_gradient_part = numerics::integrate(grad, 0.0, profile.a(), abs_tol).value +
                          numerics::integrate(grad, profile.a(), profile.b(), abs_tol).value;
  e.exact = e.exact_derivative_part + e.exact_gradient_part;
  e.majorant_derivative_part = bump::deriv_energy_majorant_rho_c(rho, c, t_sigma);
  e.majorant_gradient_part =
      side.lambda1 * std::sin(t_sigma) * std::sin(rho * t_sigma) / std::sin((1.0 - rho) * t_sigma);
  e.majorant = e.majorant_derivative_part + e.majorant_gradient_part;
  return e;
}

}  // namespace eigenlower::rayleigh
