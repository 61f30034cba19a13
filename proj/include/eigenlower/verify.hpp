#pragma once

// Invariant suites behind `eigenlower verify`. Every check records a signed
// margin: positive means satisfied with that much room, negative means violated.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eigenlower/bounds.hpp"
#include "eigenlower/bump.hpp"
#include "eigenlower/inequalities.hpp"
#include "eigenlower/parallel.hpp"
#include "eigenlower/rayleigh.hpp"
#include "eigenlower/spectral_mesh.hpp"
#include "eigenlower/surfaces.hpp"
#include "eigenlower/tube.hpp"

namespace eigenlower::verify {

struct Check {
  std::string name;
  bool passed = false;
  double margin = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
  }
  double worst_margin() const {
    double w = std::numeric_limits<double>::infinity();
    for (const auto& c : checks) w = std::min(w, c.margin);
    return w;
  }
};

struct VerifySummary {
  std::vector<SuiteResult> suites;

  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& s : suites) f += s.failures();
    return f;
  }
  int exit_status() const { return failures() == 0 ? 0 : 1; }
};

struct Tolerances {
  double quad_tol = 1e-10;
  double ode_tol = 1e-9;
  double eig_tol = 1e-8;
  std::size_t grid_n = 1000;
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(std::string name) { suite_.name = std::move(name); }

  /// Passes when margin >= 0.
  void margin(std::string name, double m, std::string detail = {}) {
    suite_.checks.push_back({std::move(name), m >= 0.0 && std::isfinite(m), m, std::move(detail)});
  }

  /// |value - target| <= tol, margin tol - |value - target|.
  void close(std::string name, double value, double target, double tol) {
    std::ostringstream os;
    os.precision(17);
    os << "value " << value << ", target " << target << ", tol " << tol;
    margin(std::move(name), tol - std::abs(value - target), os.str());
  }

  void flag(std::string name, bool ok, std::string detail = {}) {
    suite_.checks.push_back({std::move(name), ok, ok ? 0.0 : -1.0, std::move(detail)});
  }

  /// Runs body; an eigenlower::Error becomes a failed check instead of aborting the suite.
  template <class F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const Error& e) {
      flag(name, false, std::string(to_string(e.kind())) + ": " + e.what());
    }
  }

  SuiteResult take() { return std::move(suite_); }

 private:
  SuiteResult suite_;
};

inline std::string format_short(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline std::vector<double> grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

}  // namespace detail

inline SuiteResult bump_suite(const Tolerances& tol = {}) {
  detail::Recorder r("bump");
  {
    double worst = std::numeric_limits<double>::infinity();
    for (double t : detail::grid(-0.5, 1.5, 10001)) {
      const double g = bump::g_bump(t);
      double m = std::min(g, 1.0 - g);
      if (t <= 0.0) m = std::min(m, -std::abs(g));
      if (t >= 1.0) m = std::min(m, -std::abs(1.0 - g));
      worst = std::min(worst, m);
    }
    r.margin("g in [0,1], g = 0 left of 0, g = 1 right of 1", worst);
  }
  {
    double gmax = 0.0, tmax = 0.0, worst_sign = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < 10000; ++i) {
      const double t = static_cast<double>(i) / 10000.0;
      const double d = bump::g_bump_deriv(t);
      const double g = bump::g_bump(t);
      // g' > 0 wherever g is representable strictly inside (0, 1); g' underflows with g near the ends.
      if (g > 0.0 && g < 1.0) worst_sign = std::min(worst_sign, d > 0.0 ? d : -1.0);
      if (d > gmax) {
        gmax = d;
        tmax = t;
      }
    }
    r.margin("g' > 0 where g is in (0,1)", worst_sign);
    r.margin("g' <= 2 + 1e-9 on the 10^4 grid", 2.0 + 1e-9 - gmax);
    r.close("max g' = 2", gmax, 2.0, 1e-9);
    r.close("argmax g' = 1/2", tmax, 0.5, 1e-3);
  }
  {
    double worst = 0.0;
    for (double t : detail::grid(0.0, 1.0, 10001)) worst = std::max(worst, std::abs(bump::g_bump(t) + bump::g_bump(1.0 - t) - 1.0));
    r.margin("g(t) + g(1-t) = 1", 1e-12 - worst);
  }
  {
    const auto prof = bump::TransitionProfile::from_ab(0.3, 0.7);
    constexpr double h = 1e-6;
    double worst = 0.0;
    for (double x : {prof.a(), prof.b()}) {
      const double left = (bump::psi(prof, x) - bump::psi(prof, x - h)) / h;
      const double right = (bump::psi(prof, x + h) - bump::psi(prof, x)) / h;
      worst = std::max(worst, std::abs(left - right));
    }
    r.margin("psi is C^1 across a and b", 1e-8 - worst);
  }
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-3) b = std::min(1.0, a + 1e-3);
      const auto e = bump::deriv_energy(bump::TransitionProfile::from_ab(a, b), tol.quad_tol);
      worst = std::min(worst, (e.majorant_ab - e.value) / e.majorant_ab);
    }
    r.margin("deriv_energy <= 16(b^3-a^3)/(3(b^2-a^2)^2), 100 random (a,b)", worst);
  }
  {
    double worst = std::numeric_limits<double>::infinity();
    for (double t_sigma : {std::numbers::pi / 4, std::atan(1.0 / std::sqrt(2.0)), 1.0}) {
      for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double c : {1.5, 2.0, 4.0, 8.0, 16.0}) {
          const auto e = bump::deriv_energy(bump::TransitionProfile::from_rho_c(rho, c, t_sigma), tol.quad_tol);
          worst = std::min(worst, (*e.majorant_rho_c - e.value) / *e.majorant_rho_c);
        }
      }
    }
    r.margin("deriv_energy <= rho,c majorant on 3 x 5 x 5 grid", worst);
  }
  return r.take();
}

inline SuiteResult tube_suite(const Tolerances& tol = {}) {
  detail::Recorder r("tube");
  const std::size_t n = std::max<std::size_t>(tol.grid_n, 3);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (const auto& entry : catalog()) {
    const auto& s = entry.surface;
    const auto& c = entry.curvature;
    const std::string tag = s.name();
    r.guarded(tag, [&] {
      const auto ts = detail::grid(0.0, c.focal_distance - 1e-6, n);
      double dlog = -std::numeric_limits<double>::infinity(), theta_gap = std::numeric_limits<double>::infinity();
      double fd_err = 0.0;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        dlog = std::max(dlog, tube::log_jacobian_deriv(c, t));
        if (i > 0) theta_gap = std::min(theta_gap, 1.0 - tube::jacobian_theta(c, t));
        // The stencil stays 1e-3 away from the focal singularity of log theta.
        const double h = 1e-6;
        if (t > h && t < c.focal_distance - 1e-3) {
          const double fd = -(std::log(tube::jacobian_theta(c, t + h)) - std::log(tube::jacobian_theta(c, t - h))) / (2 * h);
          const double hval = tube::parallel_mean_curvature(c, t);
          fd_err = std::max(fd_err, std::abs(fd - hval) / std::max(1.0, std::abs(hval)));
        }
      }
      // (log theta)'(0) = -H(0) = 0 exactly; 1e-12 absorbs its rounding.
      r.margin(tag + ": (log theta)' <= 0", 1e-12 - dlog);
      r.margin(tag + ": theta < 1 for t > 0", theta_gap);
      r.margin(tag + ": H = -(log theta)' by central differences", 1e-6 - fd_err);

      double cp = std::numeric_limits<double>::infinity();
      for (double t : detail::grid(0.0, c.t_sigma * (1.0 - 1e-9), n)) {
        const auto fb = tube::curvature_factor_bound(c, t);
        cp = std::min(cp, fb.min_factor - fb.lemma_cp_floor + 1e-12);
        cp = std::min(cp, fb.lemma_cp_floor);
      }
      r.margin(tag + ": factor floor sin(T-t)/sin T > 0 respected", cp);

      double grad = std::numeric_limits<double>::infinity();
      std::vector<double> comps(static_cast<std::size_t>(c.dimension()));
      for (int k = 0; k < 100; ++k) {
        double flat = 0.0;
        for (double& v : comps) {
          v = normal(rng);
          flat += v * v;
        }
        for (double frac : {0.25, 0.5, 0.9}) {
          const double t = frac * c.t_sigma;
          const double exact = tube::exact_transported_gradient(c, comps, t);
          grad = std::min(grad, (tube::gradient_amplification(c.t_sigma, t) * flat - exact) / (flat + exact) + 1e-13);
        }
      }
      r.margin(tag + ": transported gradient <= amplification bound", grad);

      if (s.kind == SurfaceKind::Clifford) {
        for (double frac : {0.25, 0.5}) {
          const auto sp = tube::spruck_check(c, frac * c.big_lambda, n);
          r.margin(tag + ": H <= 2 Lambda on [0, T_eps], eps = " + (frac == 0.25 ? std::string("Lambda/4") : std::string("Lambda/2")),
                   sp.margin());
        }
      }
    });
  }
  r.guarded("tube mass", [&] {
    const auto e = clifford(1, 1);
    const auto q = tube::tube_integral(e.surface, e.curvature, [](double) { return 1.0; }, std::numbers::pi / 4, tol.quad_tol);
    r.close("clifford(1,1) tube volume over [0, pi/4] = pi^2", q.value, std::numbers::pi * std::numbers::pi, 1e-9);
  });
  return r.take();
}

inline SuiteResult rayleigh_suite(const Tolerances& tol = {}) {
  detail::Recorder r("rayleigh");
  rayleigh::ProfileOptions opts;
  opts.ode_tol = std::min(tol.ode_tol, 1e-11);
  for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    const auto surf = clifford(p, q).surface;
    const std::string tag = surf.name();
    r.guarded(tag, [&] {
      const int m = surf.m;
      const auto config = rayleigh::sign_convention_config(surf);
      const auto prof = rayleigh::solve_harmonic_profile(surf, config, opts);
      const auto rep = rayleigh::compute_rayleigh(prof);
      const double big_lambda = prof.side.curvature.big_lambda;
      const double outer = 12.0 * big_lambda + m + 11.0;
      r.margin(tag + ": sign term <A grad phi, grad phi> >= 0", rep.sign_term);
      r.margin(tag + ": Q >= m + 1", rep.q_margin());
      r.margin(tag + ": Q < 4(12 Lambda + m + 11)^2 + 1", 4.0 * outer * outer + 1.0 - rep.q_value);
      r.margin(tag + ": energy <= C1", rep.c1 - rep.dirichlet_energy);
      r.close(tag + ": energy = -h'(0) (flux)", rep.flux_energy, rep.dirichlet_energy, 1e-7);
      r.close(tag + ": mu(0) = m", prof.mu.front(), m, 1e-12);
      r.margin(tag + ": radial ODE stencil residual < 1e-6", 1e-6 - prof.max_residual());
      const auto& hist = prof.q_history;
      r.margin(tag + ": Q stable to 4 significant digits under refinement",
               5e-5 - std::abs(hist.back() - hist[hist.size() - 2]) / hist.back());
      const auto aug = rayleigh::augmented_ode_integrals(surf, config);
      r.close(tag + ": Q agrees with ODE-augmented integrals", aug.energy / aug.mass, rep.q_value, 1e-7 * rep.q_value);

      double tf = std::numeric_limits<double>::infinity();
      for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double c : {1.5, 2.0, 4.0, 8.0, 16.0}) {
          const auto e = rayleigh::testfn_energy(prof.side, rho, c, tol.quad_tol);
          tf = std::min(tf, e.exact - rep.dirichlet_energy);
          tf = std::min(tf, e.majorant - e.exact);
        }
      }
      r.margin(tag + ": energy <= test-function energy <= majorant, 5 x 5 (rho, c)", tf);

      const auto eta = rayleigh::eta_verification(prof, rep.c1, 0.0, tol.grid_n);
      r.close(tag + ": eta'(0) = -1", eta.eta_prime0_stencil, -1.0, 1e-4);
      r.margin(tag + ": eta'' + 2 Lambda eta' <= 2 C1 on [0, T_eps]", eta.damped_bound + 1e-6 - eta.max_damped_lhs);
      r.margin(tag + ": integrated eta' inequality on [0, T_eps]", 1e-9 - eta.max_integrated_gap);
      r.margin(tag + ": eta(0) > T_eps / 2", eta.eta0 - eta.mass_floor);

      const double lam = rayleigh::lambda_from_q(m, rep.q_value);
      r.margin(tag + ": lambda_from_q in (m/2, m + 1e-9]", std::min(lam - 0.5 * m, m + 1e-9 - lam));
      const auto pol = rayleigh::verify_pol(m, m, rep.q_value);
      r.margin(tag + ": quadratic nonnegative with lambda1 = m", rep.q_value - pol.threshold);
      const auto c1c = rayleigh::c1_chain(m, big_lambda, prof.side.curvature.k_max, m);
      r.flag(tag + ": C1 upper chain", c1c.hypotheses && c1c.holds);
      const auto c2c = rayleigh::c2_chain(m, big_lambda, rep.c1);
      r.flag(tag + ": C2 lower chain", c2c.holds);
      const double kappa2 = std::pow(rayleigh::eigenfunction_scale(prof.side), 2);
      const double r2 = static_cast<double>(prof.side.eigen_dim) / m;
      r.close(tag + ": phi normalization by quadrature",
              kappa2 * r2 * prof.side.area * rayleigh::coordinate_mean_square(prof.side.eigen_dim), 1.0, 1e-10);
    });
  }
  {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> md(2, 20);
    std::uniform_real_distribution<double> lq(std::log(1e-3), std::log(1e3));
    double worst = 0.0, crit = 0.0;
    for (int i = 0; i < 100; ++i) {
      const int m = md(rng);
      const double q = (m + 1.0) * (1.0 + std::exp(lq(rng)));
      const auto b = rayleigh::beta_optimizer(m, q);
      worst = std::max(worst, std::abs(b.beta_at_t0 - b.beta_closed));
      crit = std::max(crit, std::abs(b.critical_residual));
    }
    r.margin("beta(t0) = 2/(1 + sqrt(1 - (m+1)/Q)), 100 random (m, Q)", 1e-12 - worst);
    r.margin("critical point equation at t0", 1e-12 - crit);
  }
  {
    double worst = std::numeric_limits<double>::infinity();
    for (double x : detail::grid(1e-8, 50.0, 100001)) worst = std::min(worst, 0.5 - inequalities::d1_ratio(x));
    r.margin("(x + e^{-x} - 1)/x^2 <= 1/2 on [1e-8, 50]", worst);
  }
  return r.take();
}

inline SuiteResult bounds_suite(const Tolerances& = {}) {
  detail::Recorder r("bounds");
  r.close("main_bound(2, 2) = 1 + 6/43816", bounds::main_bound(2, 2.0).value, 1.0 + 6.0 / 43816.0, 1e-15);
  r.close("main_bound(3, 2) = 3/2 + 12/46216", bounds::main_bound(3, 2.0).value, 1.5 + 12.0 / 46216.0, 1e-15);
  {
    bool ok = true;
    for (int m = 2; m <= 10; ++m) {
      for (double frac : {0.0, 0.5, 0.999, 1.0}) {
        const auto b = bounds::main_bound(m, frac * std::sqrt(m));
        ok = ok && b.rigid && b.value == m;
      }
    }
    r.flag("rigid branch returns m for Lambda <= sqrt(m), m = 2..10", ok);
  }
  {
    const auto sweep = bounds::dss_comparison_sweep(2, 10, 1112, 100.0);
    std::ostringstream os;
    os << sweep.points << " points, " << sweep.violations << " violations, min increment ratio " << sweep.min_increment_ratio;
    r.margin("main >= dss on m = 2..10 x log-spaced Lambda in [sqrt(m), 100]",
             sweep.violations == 0 ? sweep.min_increment_ratio - 1.0 : -static_cast<double>(sweep.violations), os.str());
  }
  {
    double mono = std::numeric_limits<double>::infinity(), above = std::numeric_limits<double>::infinity();
    for (int m = 2; m <= 10; ++m) {
      double prev = std::numeric_limits<double>::infinity();
      for (double l : detail::grid(std::sqrt(m) * 1.001, 100.0, 1000)) {
        const double v = bounds::main_bound(m, l).value;
        mono = std::min(mono, prev - v);
        above = std::min(above, v - bounds::choi_wang(m));
        prev = v;
      }
    }
    r.margin("main bound strictly decreasing in Lambda on the non-rigid branch", mono);
    r.margin("main bound > m/2", above);
  }
  {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lc(std::log(std::sqrt(2.0) * 1.0001), std::log(1e4));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double c = std::exp(lc(rng));
      worst = std::max(worst, std::abs(bounds::genus_bound(c) - bounds::main_bound(2, c).value));
    }
    r.margin("genus_bound(C) = main_bound(2, C), 100 random C", 1e-15 - worst);
  }
  {
    double worst = std::numeric_limits<double>::infinity();
    for (int m = 2; m <= 50; ++m) {
      const auto c = bounds::dss_coefficients(m);
      worst = std::min({worst, (c.a_ceiling - c.a) / c.a_ceiling, (c.b - c.b_floor) / c.b_floor});
    }
    r.margin("a(m) <= (m-1)m^2/28800 and b(m) >= 5(m-1)m/1728, m = 2..50", worst);
  }
  {
    double worst = std::numeric_limits<double>::infinity();
    for (double x : detail::grid(1e-6, 1.0 - 1e-6, 100001)) {
      worst = std::min(worst, inequalities::gap_rhs(x) - x / 8.0);
    }
    r.margin("x/8 < 1/(1 + sqrt(1-x)) - 1/2 on [1e-6, 1 - 1e-6]", worst > 0.0 ? worst : -1.0);
    double at = std::numeric_limits<double>::infinity();
    for (double x : detail::grid(0.0, 1.0, 10001)) at = std::min(at, std::atan(x) - inequalities::arctan_lower(x));
    r.margin("arctan x >= x/(1+x^2) on [0, 1]", at);
  }
  return r.take();
}

inline SuiteResult mesh_suite(const Tolerances& tol = {}) {
  detail::Recorder r("mesh");
  mesh::EigenOptions eo;
  eo.tol = tol.eig_tol;
  r.guarded("clifford meshes", [&] {
    double prev_err = std::numeric_limits<double>::infinity();
    double err64 = 0.0, err128 = 0.0;
    bool monotone = true;
    for (int n : {16, 32, 64, 128}) {
      const auto m = mesh::clifford_mesh(n, n);
      const auto ops = mesh::cotan_operators(m);
      const auto res = mesh::first_nonzero_eigenvalue(ops.stiffness, ops.mass, eo);
      const double err = std::abs(res.lambda1 - 2.0);
      monotone = monotone && err < prev_err;
      prev_err = err;
      if (n == 64) {
        err64 = err;
        r.close("clifford_mesh(64,64): lambda1 = 2", res.lambda1, 2.0, 0.02);
        r.flag("clifford_mesh(64,64): cluster of multiplicity 4", res.cluster == 4, "cluster " + std::to_string(res.cluster));
        double worst_row = 0.0;
        const auto l = ops.stiffness.matrix();
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(l.rows());
        worst_row = (l * ones).cwiseAbs().maxCoeff();
        r.margin("stiffness row sums = 0", 1e-10 - worst_row);
        r.margin("stiffness symmetric", 1e-12 - ops.stiffness.symmetry_defect());
        const double mass_total = ops.mass.matrix().diagonal().sum();
        r.close("lumped mass total = mesh area", mass_total, ops.total_area, 1e-12 * ops.total_area);
        const Eigen::VectorXd mdiag = ops.mass.matrix().diagonal();
        double orth = 0.0;
        for (Eigen::Index c = 0; c < res.eigenvectors.cols(); ++c) {
          const auto x = res.eigenvectors.col(c);
          orth = std::max(orth, std::abs((mdiag.array() * x.array()).sum()) /
                                    std::sqrt((mdiag.array() * x.array() * x.array()).sum()));
        }
        r.margin("eigenvectors M-orthogonal to constants", 1e-8 - orth);
        Eigen::VectorXd f(l.rows());
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) f(i * n + j) = std::cos(2.0 * std::numbers::pi * i / n);
        }
        const Eigen::VectorXd coef = res.eigenvectors.transpose() * (mdiag.asDiagonal() * f);
        const double corr = coef.norm() / std::sqrt((mdiag.array() * f.array() * f.array()).sum());
        r.margin("cos(u) lies in the computed eigenspace (correlation > 0.99)", corr - 0.99);

        mesh::SparseSymmetricOperator shifted = ops.stiffness;
        for (const auto& t : ops.mass.entries) shifted.entries.emplace_back(t.row(), t.col(), 1.0 * t.value());
        const auto sres = mesh::first_nonzero_eigenvalue(shifted, ops.mass, eo);
        r.close("adding M to L shifts lambda1 by 1", sres.lambda1 - res.lambda1, 1.0, 1e-9);
      }
      if (n == 128) err128 = err;
    }
    r.flag("clifford mesh error decreases over 16, 32, 64, 128", monotone);
    const double ratio = err64 / err128;
    r.margin("128 refinement reduces the error by a factor in [3, 5]", std::min(ratio - 3.0, 5.0 - ratio),
             "ratio " + detail::format_short(ratio));
  });
  r.guarded("great sphere mesh", [&] {
    const auto m = mesh::great_sphere_mesh(4);
    const auto ops = mesh::cotan_operators(m);
    const auto res = mesh::first_nonzero_eigenvalue(ops.stiffness, ops.mass, eo);
    r.close("icosphere: lambda1 = 2", res.lambda1, 2.0, 0.05);
    r.flag("icosphere: cluster of multiplicity 3", res.cluster == 3, "cluster " + std::to_string(res.cluster));
  });
  r.guarded("off round trip", [&] {
    const auto m = mesh::clifford_mesh(8, 8);
    std::stringstream buf;
    mesh::write_off(m, buf);
    const auto back = mesh::parse_off(buf).mesh;
    bool same = back.faces == m.faces && back.vertices.size() == m.vertices.size();
    for (std::size_t i = 0; same && i < m.vertices.size(); ++i) same = back.vertices[i] == m.vertices[i];
    r.flag("OFF save/load round trip is exact", same);
  });
  return r.take();
}

inline std::vector<std::string> suite_names() { return {"bump", "tube", "rayleigh", "bounds", "mesh"}; }

inline SuiteResult run_suite(const std::string& name, const Tolerances& tol = {}) {
  if (name == "bump") return bump_suite(tol);
  if (name == "tube") return tube_suite(tol);
  if (name == "rayleigh") return rayleigh_suite(tol);
  if (name == "bounds") return bounds_suite(tol);
  if (name == "mesh") return mesh_suite(tol);
  fail(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
}

/// "all" runs every suite on the worker pool; results keep the suite order.
inline VerifySummary run(const std::string& which, const Tolerances& tol = {}) {
  const std::vector<std::string> names = which == "all" ? suite_names() : std::vector<std::string>{which};
  VerifySummary s;
  s.suites = parallel::map_indexed(names.size(), [&](std::size_t i) { return run_suite(names[i], tol); });
  return s;
}

}  // namespace eigenlower::verify
