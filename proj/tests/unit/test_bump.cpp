#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "eigenlower/bump.hpp"

using namespace eigenlower;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Reference values below were computed independently with 50-digit mpmath.

TEST_CASE("g matches high-precision reference values", "[bump]") {
  CHECK_THAT(bump::g_bump(0.25), WithinRel(0.06496916912866406, 1e-14));
  CHECK_THAT(bump::g_bump_deriv(0.25), WithinRel(1.0799675767359130, 1e-14));
  CHECK_THAT(bump::g_bump(0.4), WithinRel(0.30294071603459272, 1e-14));
  CHECK(bump::g_bump(0.0) == 0.0);
  CHECK(bump::g_bump(1.0) == 1.0);
  CHECK(bump::g_bump(-3.0) == 0.0);
  CHECK(bump::g_bump(7.0) == 1.0);
  CHECK(bump::g_bump_deriv(0.5) == 2.0);
}

TEST_CASE("g is antisymmetric about 1/2 and g' agrees with finite differences", "[bump]") {
  for (int i = 1; i < 1000; ++i) {
    const double t = i / 1000.0;
    CHECK_THAT(bump::g_bump(t) + bump::g_bump(1.0 - t), WithinAbs(1.0, 1e-15));
    CHECK_THAT(bump::g_bump_deriv(t), WithinAbs(bump::g_bump_deriv(1.0 - t), 1e-13));
    if (t > 0.01 && t < 0.99) {
      const double h = 1e-6;
      const double fd = (bump::g_bump(t + h) - bump::g_bump(t - h)) / (2 * h);
      CHECK_THAT(fd, WithinAbs(bump::g_bump_deriv(t), 1e-8));
    }
  }
}

TEST_CASE("psi is a plateau cutoff", "[bump]") {
  const auto p = bump::TransitionProfile::from_ab(0.3, 0.7);
  CHECK(bump::psi(p, 0.0) == 1.0);
  CHECK(bump::psi(p, 0.3) == 1.0);
  CHECK(bump::psi(p, -0.3) == 1.0);
  CHECK(bump::psi(p, 0.7) == 0.0);
  CHECK(bump::psi(p, 0.9) == 0.0);
  CHECK_THAT(bump::psi_deriv(p, 0.5), WithinRel(-4.76593628791586, 1e-12));
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.3 + 0.4 * i / 100.0;
    CHECK(bump::psi_deriv(p, t) <= 0.0);
  }
}

TEST_CASE("derivative energy and majorants", "[bump]") {
  const auto e = bump::deriv_energy(bump::TransitionProfile::from_ab(0.3, 0.7), 1e-12);
  CHECK_THAT(e.value, WithinRel(4.39062096703513, 1e-11));
  CHECK(e.value < e.majorant_ab);
  CHECK_FALSE(e.majorant_rho_c.has_value());

  const auto rc = bump::deriv_energy(bump::TransitionProfile::from_rho_c(0.5, 2.0, std::numbers::pi / 4), 1e-12);
  CHECK_THAT(rc.value, WithinRel(8.76415855770907, 1e-11));
  REQUIRE(rc.majorant_rho_c.has_value());
  CHECK_THAT(*rc.majorant_rho_c, WithinRel(21.1263450385686, 1e-13));
  // Both majorant forms coincide for a = rho T / c, b = rho T.
  CHECK_THAT(rc.majorant_ab, WithinRel(*rc.majorant_rho_c, 1e-13));
}

TEST_CASE("profile constructors validate parameters", "[bump]") {
  CHECK_THROWS_AS(bump::TransitionProfile::from_ab(0.5, 0.5), Error);
  CHECK_THROWS_AS(bump::TransitionProfile::from_ab(-0.1, 0.5), Error);
  CHECK_THROWS_AS(bump::TransitionProfile::from_rho_c(1.0, 2.0, 1.0), Error);
  CHECK_THROWS_AS(bump::TransitionProfile::from_rho_c(0.5, 1.0, 1.0), Error);
  CHECK_THROWS_AS(bump::TransitionProfile::from_rho_c(0.5, 2.0, 0.0), Error);
}
