#include <catch_amalgamated.hpp>

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "eigenlower/parallel.hpp"
#include "eigenlower/report.hpp"
#include "eigenlower/verify.hpp"

using namespace eigenlower;

TEST_CASE("numbers print in shortest round-trip form", "[report]") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> exponent(-300.0, 300.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::pow(10.0, exponent(rng)) * (i % 2 ? 1 : -1);
    const std::string s = report::format_number(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
    CHECK(s.find(',') == std::string::npos);
  }
  CHECK(report::format_number(0.5) == "0.5");
  CHECK(report::format_number(std::nan("")) == "nan");
  CHECK(report::format_optional(std::nullopt).empty());
}

TEST_CASE("CSV quoting and line endings", "[report]") {
  CHECK(report::csv_escape("plain") == "plain");
  CHECK(report::csv_escape("a,b") == "\"a,b\"");
  CHECK(report::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  report::Table t{{"x", "note"}, {}};
  t.add_row({"1", "a,b"});
  std::ostringstream os;
  report::write_csv(t, os);
  CHECK(os.str() == "x,note\r\n1,\"a,b\"\r\n");
}

TEST_CASE("markdown and JSON renderings", "[report]") {
  report::Table t{{"k", "v"}, {{"a|b", "1"}}};
  std::ostringstream md;
  report::write_markdown(t, md);
  CHECK(md.str() == "| k | v |\n| --- | --- |\n| a\\|b | 1 |\n");
  const auto j = report::table_to_json(t);
  CHECK(j.dump() == R"([{"k":"a|b","v":"1"}])");
  CHECK(report::tagged(2.0, report::Provenance::Mesh).dump() == R"({"value":2.0,"provenance":"mesh"})");
}

TEST_CASE("worker pool keeps input order and surfaces the first failure", "[report]") {
  const auto squares = parallel::map_indexed(1000, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < squares.size(); ++i) CHECK(squares[i] == i * i);
  auto failing = [](std::size_t i) -> int {
    if (i == 3 || i == 700) throw std::runtime_error("job " + std::to_string(i));
    return 0;
  };
  CHECK_THROWS_WITH(parallel::map_indexed(1000, failing), "job 3");
}

TEST_CASE("invariant suites are addressable by name", "[report]") {
  CHECK(verify::suite_names().size() == 5);
  CHECK_THROWS_AS(verify::run_suite("nonsense"), Error);
  const auto summary = verify::run("bounds");
  REQUIRE(summary.suites.size() == 1);
  CHECK(summary.failures() == 0);
  CHECK(summary.exit_status() == 0);
}
