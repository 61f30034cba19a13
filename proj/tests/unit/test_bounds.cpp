#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "eigenlower/bounds.hpp"

using namespace eigenlower;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("main bound against exact integer arithmetic", "[bounds]") {
  for (int m = 2; m <= 30; ++m) {
    for (std::int64_t big_lambda = 6; big_lambda <= 1000; big_lambda += 7) {
      const std::int64_t s = 12 * big_lambda + m + 11;
      const std::int64_t num = static_cast<std::int64_t>(m) * (m + 1);
      const std::int64_t den = 32 * s * s + 8;
      // Both integers are exact doubles, so the quotient is correctly rounded
      // and the sum with m/2 adds one more rounding.
      const double expected = 0.5 * m + static_cast<double>(num) / static_cast<double>(den);
      const auto b = bounds::main_bound(m, static_cast<double>(big_lambda));
      CHECK_FALSE(b.rigid);
      CHECK_THAT(b.value, Catch::Matchers::WithinULP(expected, 2));
    }
  }
  CHECK_THAT(bounds::main_bound(2, 2.0).value, WithinAbs(1.0001369362789848457, 1e-15));
  CHECK_THAT(bounds::main_bound(3, 2.0).value, WithinAbs(1.5002596503375454388, 1e-15));
}

TEST_CASE("rigid threshold includes Lambda = sqrt(m) computed in floating point", "[bounds]") {
  for (int m = 2; m <= 10; ++m) {
    const double root = std::sqrt(static_cast<double>(m));
    CHECK(bounds::main_bound(m, root).rigid);
    CHECK(bounds::main_bound(m, root).value == m);
    CHECK_FALSE(bounds::main_bound(m, root * (1.0 + 1e-9)).rigid);
  }
  CHECK_THROWS_AS(bounds::main_bound(1, 2.0), Error);
  CHECK_THROWS_AS(bounds::main_bound(2, -1.0), Error);
}

TEST_CASE("DSS coefficients and bound", "[bounds]") {
  const auto c = bounds::dss_coefficients(2);
  CHECK_THAT(c.a, WithinRel(1.315533298527022e-4, 1e-13));
  CHECK_THAT(c.b, WithinRel(4.385110995090074e-2, 1e-13));
  CHECK(c.sane());
  CHECK_THAT(bounds::dss_bound(2, 2.0), WithinAbs(1.0000020541133547, 1e-15));
  CHECK_THAT(bounds::dss_bound(2, std::sqrt(2.0)), WithinAbs(1.0000163545207457, 1e-15));
  try {
    bounds::dss_bound(2, 1.0);
    FAIL("expected HypothesisViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisViolated);
  }
}

TEST_CASE("genus bound", "[bounds]") {
  CHECK_THAT(bounds::genus_bound(1.0), WithinAbs(1.0002998800479808, 1e-15));
  for (double c : {1.5, 2.0, 7.25, 100.0}) CHECK_THAT(bounds::genus_bound(c), WithinAbs(bounds::main_bound(2, c).value, 1e-15));
  CHECK_THROWS_AS(bounds::genus_bound(0.0), Error);
}

TEST_CASE("comparison report and sweep", "[bounds]") {
  const auto below = bounds::compare(3, 1.0);
  CHECK(below.main_is_rigid);
  CHECK_FALSE(below.dss_bound.has_value());
  CHECK(below.main_beats_dss);

  const auto r = bounds::compare(2, 5.0, 5.0);
  REQUIRE(r.dss_bound.has_value());
  REQUIRE(r.genus_bound.has_value());
  CHECK(r.main_bound > *r.dss_bound);
  CHECK(r.main_beats_dss);
  CHECK(r.choi_wang == 1.0);

  const auto s = bounds::dss_comparison_sweep(2, 4, 50, 100.0);
  CHECK(s.points == 150);
  CHECK(s.violations == 0);
  CHECK(s.ties == 0);
  CHECK(s.min_increment_ratio > 1.0);
}

TEST_CASE("x/8 gap behind the final estimate", "[bounds]") {
  CHECK_THAT(inequalities::gap_rhs(0.5), WithinRel(0.08578643762690495, 1e-14));
  CHECK_THAT(inequalities::gap_rhs(0.999), WithinRel(0.46934656996828449, 1e-14));
  CHECK_THAT(inequalities::gap_rhs(0.3), WithinRel(inequalities::gap_rhs_literal(0.3), 1e-14));
  // The rationalized form keeps full relative accuracy where the literal one cancels.
  CHECK_THAT(inequalities::gap_rhs(1e-12), WithinRel(1e-12 / 8.0, 1e-11));
  const auto g = bounds::derivation_gap_check(2, 8.09);
  CHECK(g.holds);
  CHECK_THROWS_AS(bounds::derivation_gap_check(2, 2.5), Error);
}

TEST_CASE("elementary inequalities", "[bounds]") {
  CHECK_THAT(inequalities::d1_ratio(1e-9), WithinAbs(0.5, 1e-9));
  CHECK_THAT(inequalities::d1_ratio(1.0), WithinRel(std::exp(-1.0), 1e-14));
  CHECK_THAT(inequalities::d1_ratio(0.09), WithinRel((0.09 + std::exp(-0.09) - 1.0) / 0.0081, 1e-9));
  CHECK_THAT(inequalities::d1_ratio(0.11), WithinRel((0.11 + std::exp(-0.11) - 1.0) / 0.0121, 1e-12));
  CHECK(inequalities::arctan_lower(0.0) == 0.0);
  CHECK(std::atan(1.0) >= inequalities::arctan_lower(1.0));
}
