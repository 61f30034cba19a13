#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numbers>

#include "eigenlower/tube.hpp"

using namespace eigenlower;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Clifford (1,1) tube Jacobian is cos 2t", "[tube]") {
  const auto c = clifford(1, 1).curvature;
  for (int i = 0; i < 100; ++i) {
    const double t = 0.78 * i / 100.0;
    CHECK_THAT(tube::jacobian_theta(c, t), WithinAbs(std::cos(2 * t), 1e-14));
    CHECK_THAT(tube::jacobian_theta_angles(c, t), WithinAbs(std::cos(2 * t), 1e-14));
    CHECK_THAT(tube::parallel_mean_curvature(c, t), WithinAbs(2 * std::tan(2 * t), 1e-12));
    CHECK_THAT(tube::log_jacobian_deriv(c, t), WithinAbs(-2 * std::tan(2 * t), 1e-12));
  }
}

TEST_CASE("Spruck window and mean curvature at its end", "[tube]") {
  const auto c = clifford(1, 1).curvature;
  const auto sp = tube::spruck_check(c, c.big_lambda / 2);
  CHECK_THAT(sp.window.t_epsilon, WithinRel(0.33983690945412194, 1e-14));
  CHECK_THAT(tube::parallel_mean_curvature(c, sp.window.t_epsilon), WithinRel(1.6162440712835372, 1e-13));
  CHECK(sp.passed);
  CHECK(sp.margin() > 0.0);
  CHECK_THROWS_AS(tube::spruck_check(c, 0.51 * c.big_lambda), Error);
  CHECK_THROWS_AS(tube::spruck_check(great_sphere(2).curvature, 0.1), Error);
}

TEST_CASE("gradient transport", "[tube]") {
  CHECK_THAT(tube::gradient_amplification(std::numbers::pi / 4, std::numbers::pi / 8), WithinRel(2.0 + std::sqrt(2.0), 1e-14));
  const auto c = clifford(1, 1).curvature;
  const std::array<double, 2> along_q = {0.0, 1.0};
  CHECK_THAT(tube::exact_transported_gradient(c, along_q, std::numbers::pi / 8), WithinRel(2.0 + std::sqrt(2.0), 1e-13));
  const std::array<double, 3> wrong = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(tube::exact_transported_gradient(c, wrong, 0.1), Error);
}

TEST_CASE("factor floor holds and is attained when k_max is positive", "[tube]") {
  for (const auto& e : catalog(4)) {
    if (e.surface.kind != SurfaceKind::Clifford) continue;
    const auto& c = e.curvature;
    // The positive family k = sqrt(p/q) carries k_max exactly when p >= q.
    const bool attained = e.surface.p >= e.surface.q;
    for (int i = 0; i < 50; ++i) {
      const double t = c.t_sigma * i / 50.0;
      const auto fb = tube::curvature_factor_bound(c, t);
      CHECK(fb.min_factor >= fb.lemma_cp_floor - 1e-14);
      if (attained) CHECK_THAT(fb.min_factor, WithinAbs(fb.lemma_cp_floor, 1e-14));
    }
  }
}

TEST_CASE("tube integrals and the first variation of parallel surfaces", "[tube]") {
  const auto e = clifford(1, 1);
  const auto vol = tube::tube_integral(e.surface, e.curvature, [](double) { return 1.0; }, std::numbers::pi / 4, 1e-12);
  CHECK_THAT(vol.value, WithinAbs(std::numbers::pi * std::numbers::pi, 1e-10));

  const auto e2 = clifford(2, 3);
  auto radial = [](double t) { return std::exp(-t) * (1.0 + t * t); };
  auto radial_d = [](double t) { return std::exp(-t) * (2.0 * t - 1.0 - t * t); };
  for (double t : {0.0, 0.1, 0.3, 0.6}) {
    const auto chk = tube::surface_integral_derivative_check(e2.surface, e2.curvature, radial, radial_d, t);
    CHECK(chk.passed());
  }
}

TEST_CASE("evaluations outside the tube are rejected", "[tube]") {
  const auto c = clifford(1, 1).curvature;
  try {
    tube::curvature_factor_bound(c, c.t_sigma + 1e-3);
    FAIL("expected OutOfTubeRange");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::OutOfTubeRange);
  }
  CHECK_THROWS_AS(tube::tube_integral(clifford(1, 1).surface, c, [](double) { return 1.0; }, 1.0), Error);
}
