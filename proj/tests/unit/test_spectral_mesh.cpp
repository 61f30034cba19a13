#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "eigenlower/spectral_mesh.hpp"

using namespace eigenlower;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double lambda1(const mesh::TriangleMesh& m, mesh::EdgeMetric metric = mesh::EdgeMetric::SphereGeodesic) {
  const auto ops = mesh::cotan_operators(m, metric);
  return mesh::first_nonzero_eigenvalue(ops.stiffness, ops.mass).lambda1;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("generated meshes are closed and on the unit sphere", "[spectral_mesh]") {
  const auto torus = mesh::validate(mesh::clifford_mesh(16, 24));
  CHECK(torus.vertices == 16 * 24);
  CHECK(torus.faces == 2 * 16 * 24);
  CHECK(torus.euler_characteristic == 0);
  CHECK(torus.max_norm_error < 1e-15);
  const auto sphere = mesh::validate(mesh::great_sphere_mesh(2));
  CHECK(sphere.euler_characteristic == 2);
  CHECK(sphere.vertices == 162);
  CHECK(kind_of([] { mesh::clifford_mesh(7, 16); }) == ErrorKind::InvalidResolution);
}

TEST_CASE("chordal cotangent operator is exact on structured Clifford grids", "[spectral_mesh]") {
  for (int n : {8, 12, 20, 32}) {
    CHECK_THAT(lambda1(mesh::clifford_mesh(n, n), mesh::EdgeMetric::Chordal), WithinAbs(2.0, 1e-9));
  }
}

TEST_CASE("geodesic cotangent operator converges at second order", "[spectral_mesh]") {
  const double e16 = std::abs(lambda1(mesh::clifford_mesh(16, 16)) - 2.0);
  const double e32 = std::abs(lambda1(mesh::clifford_mesh(32, 32)) - 2.0);
  CHECK_THAT(e16, WithinRel(1.265e-2, 1e-2));
  CHECK(e16 / e32 > 3.5);
  CHECK(e16 / e32 < 4.5);
  CHECK_THAT(lambda1(mesh::great_sphere_mesh(3)), WithinAbs(2.0, 0.01));
}

TEST_CASE("assembled operators are symmetric with zero row sums", "[spectral_mesh]") {
  const auto ops = mesh::cotan_operators(mesh::clifford_mesh(12, 12));
  CHECK(ops.stiffness.symmetry_defect() == 0.0);
  const Eigen::SparseMatrix<double> l = ops.stiffness.matrix();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(l.rows());
  CHECK((l * ones).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THAT(ops.mass.matrix().sum(), WithinRel(ops.total_area, 1e-12));
  CHECK_THAT(ops.total_area, WithinRel(2.0 * std::numbers::pi * std::numbers::pi, 3e-2));
  CHECK_THAT(mesh::cotan_weight(std::numbers::pi / 3, std::numbers::pi / 3), WithinRel(1.0 / std::sqrt(3.0), 1e-14));
}

TEST_CASE("eigen solver reports the Clifford cluster and rejects bad shifts", "[spectral_mesh]") {
  const auto ops = mesh::cotan_operators(mesh::clifford_mesh(24, 24));
  const auto res = mesh::first_nonzero_eigenvalue(ops.stiffness, ops.mass);
  CHECK(res.cluster == 4);
  CHECK(res.residual <= 1e-8);
  mesh::EigenOptions bad;
  bad.shift = -10.0;
  CHECK(kind_of([&] { mesh::first_nonzero_eigenvalue(ops.stiffness, ops.mass, bad); }) == ErrorKind::SingularShift);
}

TEST_CASE("OFF round trip is bit exact", "[spectral_mesh]") {
  const auto original = mesh::clifford_mesh(10, 14);
  std::stringstream ss;
  mesh::write_off(original, ss);
  const auto back = mesh::parse_off(ss);
  CHECK(back.renormalized == 0);
  CHECK(back.mesh.vertices == original.vertices);
  CHECK(back.mesh.faces == original.faces);
}

TEST_CASE("OFF parse errors carry line and column", "[spectral_mesh]") {
  std::istringstream bad_token("OFF\n# comment line\n4 4 0\n1 0 0 zero\n");
  try {
    mesh::parse_off(bad_token);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK_THAT(std::string(e.what()), ContainsSubstring("line 4, column 7"));
  }
  std::istringstream bad_header("COFF\n");
  CHECK(kind_of([&] { mesh::parse_off(bad_header); }) == ErrorKind::ParseError);
  std::istringstream truncated("OFF\n4 4 0\n1 0 0 0\n");
  CHECK(kind_of([&] { mesh::parse_off(truncated); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { mesh::load_off("/nonexistent/mesh.off"); }) == ErrorKind::ParseError);
}

TEST_CASE("scaled meshes need explicit renormalization", "[spectral_mesh]") {
  auto scaled = mesh::great_sphere_mesh(1);
  for (auto& v : scaled.vertices) {
    for (double& x : v) x *= 1.01;
  }
  std::stringstream ss;
  mesh::write_off(scaled, ss);
  const std::string text = ss.str();
  std::istringstream strict(text);
  CHECK(kind_of([&] { mesh::validate(mesh::parse_off(strict).mesh); }) == ErrorKind::NotUnitSphere);
  std::istringstream lenient(text);
  const auto fixed = mesh::parse_off(lenient, {true, 1e-6});
  CHECK(fixed.renormalized == scaled.vertices.size());
  CHECK(mesh::validate(fixed.mesh).max_norm_error < 1e-15);
}

TEST_CASE("open and degenerate meshes are rejected", "[spectral_mesh]") {
  mesh::TriangleMesh strip{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, {{0, 1, 2}, {0, 2, 3}}};
  CHECK(kind_of([&] { mesh::validate(strip); }) == ErrorKind::NotClosed);
  mesh::TriangleMesh out_of_range{{{1, 0, 0, 0}}, {{0, 1, 2}}};
  CHECK(kind_of([&] { mesh::validate(out_of_range); }) == ErrorKind::InvalidArgument);
}
