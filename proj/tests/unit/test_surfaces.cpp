#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "eigenlower/surfaces.hpp"

using namespace eigenlower;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Principal curvature along a unit-speed great circle of one factor, measured
// as <-dN/ds, X'> from finite differences of the explicit normal
// N = (r2 a, -r1 b) at X = (r1 a, r2 b).
double fd_curvature(int p, int q, bool along_p, std::mt19937_64& rng) {
  const int m = p + q;
  const double r1 = std::sqrt(static_cast<double>(p) / m), r2 = std::sqrt(static_cast<double>(q) / m);
  std::normal_distribution<double> g;
  auto random_unit = [&](int d) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = g(rng);
    return Eigen::VectorXd(v.normalized());
  };
  Eigen::VectorXd a = random_unit(p + 1), b = random_unit(q + 1);
  Eigen::VectorXd& moving = along_p ? a : b;
  Eigen::VectorXd e = random_unit(static_cast<int>(moving.size()));
  e = (e - e.dot(moving) * moving).normalized();
  const double radius = along_p ? r1 : r2;
  auto point = [&](double s) {
    const Eigen::VectorXd c = std::cos(s / radius) * moving + std::sin(s / radius) * e;
    const Eigen::VectorXd aa = along_p ? c : a, bb = along_p ? b : c;
    Eigen::VectorXd x(m + 2), n(m + 2);
    x << r1 * aa, r2 * bb;
    n << r2 * aa, -r1 * bb;
    return std::pair{x, n};
  };
  const double h = 1e-5;
  const auto [x0, n0] = point(0.0);
  REQUIRE_THAT(n0.norm(), WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(n0.dot(x0), WithinAbs(0.0, 1e-14));
  const auto [xp, np] = point(h);
  const auto [xm, nm] = point(-h);
  const Eigen::VectorXd tangent = (xp - xm) / (2 * h);
  const Eigen::VectorXd dn = (np - nm) / (2 * h);
  return -dn.dot(tangent) / tangent.squaredNorm();
}

}  // namespace

TEST_CASE("Clifford curvatures match a finite-difference shape operator", "[surfaces]") {
  std::mt19937_64 rng(3);
  for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 3}, std::pair{4, 1}}) {
    const auto entry = clifford(p, q);
    REQUIRE(entry.curvature.families.size() == 2);
    const auto& fp = entry.curvature.families[0];
    const auto& fq = entry.curvature.families[1];
    CHECK(fp.multiplicity == p);
    CHECK(fq.multiplicity == q);
    CHECK_THAT(fp.value, WithinAbs(fd_curvature(p, q, true, rng), 1e-8));
    CHECK_THAT(fq.value, WithinAbs(fd_curvature(p, q, false, rng), 1e-8));
  }
}

TEST_CASE("catalog surfaces are minimal with the expected invariants", "[surfaces]") {
  const auto all = catalog(6);
  CHECK(all.size() == 5 + 36);
  for (const auto& e : all) {
    const auto& c = e.curvature;
    double trace = 0.0, norm2 = 0.0;
    for (const auto& f : c.families) {
      trace += f.multiplicity * f.value;
      norm2 += f.multiplicity * f.value * f.value;
      CHECK_THAT(1.0 / std::tan(f.theta), WithinAbs(f.value, 1e-12));
    }
    CHECK(c.dimension() == e.surface.m);
    CHECK_THAT(trace, WithinAbs(0.0, 1e-12));
    CHECK_THAT(c.big_lambda, WithinAbs(std::sqrt(norm2), 1e-12));
    CHECK(c.t_sigma <= c.focal_distance);
    CHECK(analytic_lambda1(e.surface) == Catch::Approx(e.surface.m).epsilon(1e-14));
    if (e.surface.kind == SurfaceKind::Clifford) {
      CHECK_THAT(c.big_lambda, WithinRel(std::sqrt(e.surface.m), 1e-14));
      CHECK_THAT(c.focal_distance, WithinAbs(std::atan(std::sqrt(static_cast<double>(e.surface.q) / e.surface.p)), 1e-14));
    } else {
      CHECK(c.big_lambda == 0.0);
    }
  }
}

TEST_CASE("surface areas", "[surfaces]") {
  CHECK_THAT(surface_area(clifford(1, 1).surface), WithinRel(2.0 * std::numbers::pi * std::numbers::pi, 1e-14));
  CHECK_THAT(surface_area(clifford(1, 2).surface), WithinRel(30.390500041408301, 1e-13));
  CHECK_THAT(surface_area(great_sphere(2).surface), WithinRel(4.0 * std::numbers::pi, 1e-14));
  CHECK_THAT(unit_sphere_area(3), WithinRel(2.0 * std::numbers::pi * std::numbers::pi, 1e-14));
}

TEST_CASE("invalid factors are rejected", "[surfaces]") {
  try {
    clifford(0, 2);
    FAIL("expected InvalidDimension");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDimension);
    CHECK(e.is_input_error());
  }
}
