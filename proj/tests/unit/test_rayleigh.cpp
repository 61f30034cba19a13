#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "eigenlower/rayleigh.hpp"

using namespace eigenlower;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Solved {
  rayleigh::HarmonicExtensionProfile profile;
  rayleigh::RayleighReport report;
};

Solved solve(int p, int q, rayleigh::ExtensionConfig config) {
  auto prof = rayleigh::solve_harmonic_profile(clifford(p, q).surface, config, {});
  auto rep = rayleigh::compute_rayleigh(prof);
  return {std::move(prof), rep};
}

}  // namespace

TEST_CASE("sign convention selects the collapsing p side", "[rayleigh]") {
  for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 3}}) {
    const auto surf = clifford(p, q).surface;
    const auto cfg = rayleigh::sign_convention_config(surf);
    CHECK(cfg.collapsing == rayleigh::Factor::P);
    CHECK(cfg.eigenfunction == rayleigh::Factor::P);
    CHECK(rayleigh::make_tube_side(surf, cfg).satisfies_sign_convention());
  }
  CHECK_FALSE(rayleigh::make_tube_side(clifford(1, 2).surface, {rayleigh::Factor::Q, rayleigh::Factor::P}).satisfies_sign_convention());
  CHECK_THROWS_AS(rayleigh::make_tube_side(great_sphere(2).surface, {}), Error);
}

TEST_CASE("Rayleigh quotient agrees with independent ODE-augmented integrals", "[rayleigh]") {
  for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    const auto surf = clifford(p, q).surface;
    const auto cfg = rayleigh::sign_convention_config(surf);
    const auto s = solve(p, q, cfg);
    const auto aug = rayleigh::augmented_ode_integrals(surf, cfg);
    CHECK_THAT(s.report.dirichlet_energy, WithinRel(aug.energy, 1e-7));
    CHECK_THAT(s.report.l2_mass, WithinRel(aug.mass, 1e-7));
    CHECK_THAT(s.report.flux_energy, WithinRel(s.report.dirichlet_energy, 1e-7));
    CHECK(s.report.q_margin() > 0.0);
    CHECK(s.profile.max_residual() < 1e-6);
  }
}

TEST_CASE("Clifford (1,1) and (2,2) reference quantities", "[rayleigh]") {
  const auto s11 = solve(1, 1, {});
  CHECK_THAT(s11.report.q_value, WithinRel(8.0899714062, 1e-8));
  CHECK_THAT(s11.report.dirichlet_energy, WithinRel(1.6828789401, 1e-8));
  // On (2,2) the p-side harmonic extension has energy exactly 2.
  const auto s22 = solve(2, 2, {});
  CHECK_THAT(s22.report.dirichlet_energy, WithinRel(2.0, 1e-8));
}

TEST_CASE("the wrong side yields Q below m + 1", "[rayleigh]") {
  const auto s = solve(1, 2, {rayleigh::Factor::Q, rayleigh::Factor::P});
  CHECK(s.report.q_value < 3.0);
  CHECK(std::isnan(s.report.lambda_lower));
  try {
    rayleigh::lambda_from_q(3, s.report.q_value);
    FAIL("expected QTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QTooSmall);
  }
}

TEST_CASE("eta satisfies its differential inequalities", "[rayleigh]") {
  const auto s = solve(1, 1, {});
  const auto eta = rayleigh::eta_verification(s.profile, s.report.c1);
  CHECK_THAT(eta.eta_prime0_stencil, WithinAbs(-1.0, 1e-4));
  CHECK(eta.damped_holds);
  CHECK(eta.integrated_holds);
  CHECK(eta.mass_floor_holds);
  CHECK(eta.chain_floor <= eta.mass_floor * 2.0);
}

TEST_CASE("harmonic extension beats every cut-off test function", "[rayleigh]") {
  const auto s = solve(1, 2, rayleigh::sign_convention_config(clifford(1, 2).surface));
  for (double rho : {0.2, 0.5, 0.8}) {
    for (double c : {1.5, 3.0, 10.0}) {
      const auto e = rayleigh::testfn_energy(s.profile.side, rho, c);
      CHECK(s.report.dirichlet_energy <= e.exact);
      CHECK(e.exact <= e.majorant);
      CHECK_THAT(e.exact, WithinRel(e.exact_derivative_part + e.exact_gradient_part, 1e-14));
    }
  }
}

TEST_CASE("beta optimizer closed form", "[rayleigh]") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> dim(2, 40);
  std::uniform_real_distribution<double> ratio(1.001, 200.0);
  for (int i = 0; i < 100; ++i) {
    const int m = dim(rng);
    const double q = (m + 1.0) * ratio(rng);
    const auto b = rayleigh::beta_optimizer(m, q);
    CHECK_THAT(b.beta_at_t0, WithinAbs(b.beta_closed, 1e-12));
    CHECK_THAT(b.critical_residual, WithinAbs(0.0, 1e-12));
    // t0 maximizes beta over negative t in its branch.
    CHECK(rayleigh::beta(m, q, b.t0 * 1.01) <= b.beta_at_t0 + 1e-12);
    CHECK(rayleigh::beta(m, q, b.t0 * 0.99) <= b.beta_at_t0 + 1e-12);
    CHECK_THAT(rayleigh::lambda_from_q(m, q), WithinRel(0.5 * m * b.beta_closed, 1e-14));
  }
  CHECK_THAT(rayleigh::beta_optimizer(3, 4.0).beta_at_t0, WithinAbs(2.0, 1e-14));
}

TEST_CASE("quadratic check threshold", "[rayleigh]") {
  const auto pol = rayleigh::verify_pol(2, 2.0, 8.09);
  CHECK_THAT(pol.threshold, WithinRel(3.0, 1e-14));
  CHECK(pol.passed);
  CHECK_FALSE(rayleigh::verify_pol(2, 2.0, 2.9).passed);
  CHECK_THROWS_AS(rayleigh::verify_pol(2, 1.0, 10.0), Error);
}

TEST_CASE("C1 and C2 constants and their chains", "[rayleigh]") {
  CHECK_THAT(rayleigh::c1_constant(1.0, 2.0), WithinRel(14.995435372881497, 1e-14));
  const double c1 = rayleigh::c1_constant(std::sqrt(2.0), 2.0);
  CHECK_THAT(c1, WithinRel(18.485355824659485, 1e-14));
  CHECK_THAT(rayleigh::c2_constant(2.0, c1), WithinRel(6.600585527551976e-4, 1e-13));
  CHECK_THAT(rayleigh::c1_constant(1000.0, 2.0) / (32000.0 / 3.0), WithinAbs(1.00000052, 1e-8));
  CHECK_THROWS_AS(rayleigh::c1_constant(0.0, 2.0), Error);

  const auto chain1 = rayleigh::c1_chain(2, std::sqrt(2.0), 1.0, 2.0);
  CHECK(chain1.hypotheses);
  CHECK(chain1.holds);
  const auto chain2 = rayleigh::c2_chain(2, 2.0, c1);
  CHECK(chain2.holds);
  CHECK_THAT(chain2.values[3], WithinRel(1.8258170531312764e-4, 1e-14));
}

TEST_CASE("coordinate mean square over unit spheres", "[rayleigh]") {
  for (int d = 1; d <= 5; ++d) CHECK_THAT(rayleigh::coordinate_mean_square(d), WithinRel(1.0 / (d + 1), 1e-12));
}
