#pragma once

// Discrete Laplace-Beltrami spectra of closed triangulated surfaces in S^3,
// used to cross-check the first eigenvalue of m = 2 canonical surfaces.
// Stiffness uses cotangent weights from edge lengths measured either along
// great circles of S^3 (default) or as R^4 chords; mass is lumped (one third
// of the incident triangle areas per vertex).

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <locale>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eigenlower/error.hpp"

namespace eigenlower::mesh {

using Vec4 = std::array<double, 4>;
using Face = std::array<int, 3>;

struct TriangleMesh {
  std::vector<Vec4> vertices;
  std::vector<Face> faces;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_faces() const { return faces.size(); }
};

inline double norm(const Vec4& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]); }

inline double dist2(const Vec4& a, const Vec4& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

struct MeshStats {
  std::size_t vertices = 0;
  std::size_t faces = 0;
  std::size_t edges = 0;
  long euler_characteristic = 0;
  double max_norm_error = 0.0;
};

/// Checks index ranges, that every undirected edge bounds exactly two faces
/// traversing it in opposite directions, and |v| = 1 within norm_tol.
inline MeshStats validate(const TriangleMesh& mesh, double norm_tol = 1e-6) {
  const auto nv = static_cast<int>(mesh.vertices.size());
  std::map<std::pair<int, int>, int> directed;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& t = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      if (a < 0 || a >= nv || b < 0 || b >= nv) {
        fail(ErrorKind::InvalidArgument, "face " + std::to_string(f) + " references a missing vertex");
      }
      if (a == b) fail(ErrorKind::DegenerateTriangle, "face " + std::to_string(f) + " repeats a vertex");
      if (++directed[{a, b}] > 1) {
        fail(ErrorKind::NotClosed, "directed edge (" + std::to_string(a) + "," + std::to_string(b) +
                                       ") used twice: inconsistent orientation or non-manifold edge");
      }
    }
  }
  for (const auto& [e, count] : directed) {
    if (directed.find({e.second, e.first}) == directed.end()) {
      fail(ErrorKind::NotClosed, "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                     ") lies on the boundary");
    }
  }
  MeshStats s;
  s.vertices = mesh.vertices.size();
  s.faces = mesh.faces.size();
  s.edges = directed.size() / 2;
  s.euler_characteristic =
      static_cast<long>(s.vertices) - static_cast<long>(s.edges) + static_cast<long>(s.faces);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const double err = std::abs(norm(mesh.vertices[i]) - 1.0);
    s.max_norm_error = std::max(s.max_norm_error, err);
    if (err > norm_tol) {
      std::ostringstream os;
      os.precision(17);
      os << "vertex " << i << " has norm " << norm(mesh.vertices[i]);
      fail(ErrorKind::NotUnitSphere, os.str());
    }
  }
  return s;
}

/// Structured grid on (cos u, sin u, cos v, sin v) / sqrt(2), each quad split in two.
inline TriangleMesh clifford_mesh(int n_u, int n_v) {
  if (n_u < 8 || n_v < 8) fail(ErrorKind::InvalidResolution, "clifford_mesh requires n_u, n_v >= 8");
  TriangleMesh mesh;
  const double r = 1.0 / std::numbers::sqrt2;
  mesh.vertices.reserve(static_cast<std::size_t>(n_u) * n_v);
  for (int i = 0; i < n_u; ++i) {
    const double u = 2.0 * std::numbers::pi * i / n_u;
    for (int j = 0; j < n_v; ++j) {
      const double v = 2.0 * std::numbers::pi * j / n_v;
      mesh.vertices.push_back({r * std::cos(u), r * std::sin(u), r * std::cos(v), r * std::sin(v)});
    }
  }
  auto id = [n_u, n_v](int i, int j) { return ((i + n_u) % n_u) * n_v + (j + n_v) % n_v; };
  mesh.faces.reserve(2 * static_cast<std::size_t>(n_u) * n_v);
  for (int i = 0; i < n_u; ++i) {
    for (int j = 0; j < n_v; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({a, c, d});
    }
  }
  return mesh;
}

/// Subdivided icosahedron on the great sphere {w = 0} of S^3.
inline TriangleMesh great_sphere_mesh(int subdivisions) {
  if (subdivisions < 0 || subdivisions > 7) {
    fail(ErrorKind::InvalidResolution, "great_sphere_mesh supports 0..7 subdivisions");
  }
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> pts = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
                                            {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
                                            {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  std::vector<Face> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  auto normalize = [](std::array<double, 3> p) {
    const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    return std::array<double, 3>{p[0] / n, p[1] / n, p[2] / n};
  };
  for (auto& p : pts) p = normalize(p);
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const auto& pa = pts[a];
      const auto& pb = pts[b];
      pts.push_back(normalize({pa[0] + pb[0], pa[1] + pb[1], pa[2] + pb[2]}));
      const int id = static_cast<int>(pts.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Face> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  TriangleMesh mesh;
  for (const auto& p : pts) mesh.vertices.push_back({p[0], p[1], p[2], 0.0});
  mesh.faces = std::move(faces);
  return mesh;
}

// ---------------------------------------------------------------------------
// OFF input/output (4-D vertex records)

namespace detail {

class OffTokenizer {
 public:
  explicit OffTokenizer(std::istream& in) : in_(in) {}

  struct Token {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
  };

  // Next whitespace-delimited token; '#' starts a comment to end of line.
  bool next(Token& tok) {
    while (true) {
      if (pos_ >= current_.size()) {
        if (!std::getline(in_, current_)) return false;
        ++line_;
        pos_ = 0;
        if (auto hash = current_.find('#'); hash != std::string::npos) current_.resize(hash);
        continue;
      }
      while (pos_ < current_.size() && std::isspace(static_cast<unsigned char>(current_[pos_]))) ++pos_;
      if (pos_ >= current_.size()) continue;
      const std::size_t start = pos_;
      while (pos_ < current_.size() && !std::isspace(static_cast<unsigned char>(current_[pos_]))) ++pos_;
      tok.text = current_.substr(start, pos_ - start);
      tok.line = line_;
      tok.column = start + 1;
      return true;
    }
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::string current_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

[[noreturn]] inline void parse_fail(std::size_t line, std::size_t column, const std::string& what) {
  fail(ErrorKind::ParseError, "OFF line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

inline OffTokenizer::Token expect(OffTokenizer& tz, const char* what) {
  OffTokenizer::Token tok;
  if (!tz.next(tok)) parse_fail(tz.line() + 1, 1, std::string("unexpected end of file, expected ") + what);
  return tok;
}

template <class T>
T parse_number(const OffTokenizer::Token& tok, const char* what) {
  T value{};
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (!tok.text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    parse_fail(tok.line, tok.column, std::string("expected ") + what + ", got '" + tok.text + "'");
  }
  return value;
}

}  // namespace detail

struct LoadOptions {
  bool renormalize = false;
  double norm_tol = 1e-6;
};

struct LoadResult {
  TriangleMesh mesh;
  std::size_t renormalized = 0;  // vertices pushed back onto S^3
};

inline LoadResult parse_off(std::istream& in, const LoadOptions& opts = {}) {
  detail::OffTokenizer tz(in);
  const auto header = detail::expect(tz, "OFF header");
  if (header.text != "OFF" && header.text != "4OFF") {
    detail::parse_fail(header.line, header.column, "expected 'OFF' header, got '" + header.text + "'");
  }
  const auto nv_tok = detail::expect(tz, "vertex count");
  const auto nv = detail::parse_number<long>(nv_tok, "vertex count");
  const auto nf_tok = detail::expect(tz, "face count");
  const auto nf = detail::parse_number<long>(nf_tok, "face count");
  const auto ne_tok = detail::expect(tz, "edge count");
  (void)detail::parse_number<long>(ne_tok, "edge count");
  if (nv <= 0) detail::parse_fail(nv_tok.line, nv_tok.column, "vertex count must be positive");
  if (nf <= 0) detail::parse_fail(nf_tok.line, nf_tok.column, "face count must be positive");

  LoadResult out;
  out.mesh.vertices.resize(static_cast<std::size_t>(nv));
  for (auto& v : out.mesh.vertices) {
    std::size_t line = 0;
    for (int k = 0; k < 4; ++k) {
      const auto tok = detail::expect(tz, "vertex coordinate");
      if (k == 0) line = tok.line;
      else if (tok.line != line) detail::parse_fail(tok.line, tok.column, "vertex records need 4 coordinates on one line");
      v[k] = detail::parse_number<double>(tok, "vertex coordinate");
      if (!std::isfinite(v[k])) detail::parse_fail(tok.line, tok.column, "non-finite coordinate");
    }
  }
  out.mesh.faces.resize(static_cast<std::size_t>(nf));
  for (auto& f : out.mesh.faces) {
    const auto count_tok = detail::expect(tz, "face vertex count");
    if (detail::parse_number<int>(count_tok, "face vertex count") != 3) {
      detail::parse_fail(count_tok.line, count_tok.column, "only triangles are supported");
    }
    for (int k = 0; k < 3; ++k) {
      const auto tok = detail::expect(tz, "face index");
      f[k] = detail::parse_number<int>(tok, "face index");
      if (f[k] < 0 || f[k] >= nv) detail::parse_fail(tok.line, tok.column, "face index out of range");
    }
  }
  detail::OffTokenizer::Token extra;
  if (tz.next(extra)) detail::parse_fail(extra.line, extra.column, "trailing data after the last face");

  for (auto& v : out.mesh.vertices) {
    const double n = norm(v);
    if (std::abs(n - 1.0) > opts.norm_tol && opts.renormalize) {
      if (!(n > 0.0)) fail(ErrorKind::NotUnitSphere, "cannot renormalize a vertex at the origin");
      for (double& c : v) c /= n;
      ++out.renormalized;
    }
  }
  validate(out.mesh, opts.norm_tol);
  return out;
}

inline LoadResult load_off(const std::string& path, const LoadOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
  return parse_off(in, opts);
}

inline void write_off(const TriangleMesh& mesh, std::ostream& out) {
  out.imbue(std::locale::classic());
  out.precision(17);
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
  for (const auto& v : mesh.vertices) out << v[0] << ' ' << v[1] << ' ' << v[2] << ' ' << v[3] << '\n';
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

inline void save_off(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  write_off(mesh, out);
  if (!out) fail(ErrorKind::InvalidArgument, "write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Operators

struct SparseSymmetricOperator {
  int dimension = 0;
  std::vector<Eigen::Triplet<double>> entries;  // duplicates are summed

  Eigen::SparseMatrix<double> matrix() const {
    Eigen::SparseMatrix<double> a(dimension, dimension);
    a.setFromTriplets(entries.begin(), entries.end());
    return a;
  }

  double symmetry_defect() const {
    const auto a = matrix();
    const Eigen::SparseMatrix<double> at = a.transpose();
    return (a - at).norm();
  }
};

/// (cot alpha + cot beta) / 2 for the two angles opposite an interior edge.
inline double cotan_weight(double alpha, double beta) { return 0.5 * (1.0 / std::tan(alpha) + 1.0 / std::tan(beta)); }

/// Chordal lengths make every first Fourier mode of a structured Clifford grid
/// an exact discrete eigenvector, which hides the O(h^2) discretization error.
enum class EdgeMetric { SphereGeodesic, Chordal };

inline const char* to_string(EdgeMetric m) { return m == EdgeMetric::Chordal ? "chordal" : "geodesic"; }

inline double edge_length_sq(const Vec4& a, const Vec4& b, EdgeMetric metric) {
  const double c2 = dist2(a, b);
  if (metric == EdgeMetric::Chordal) return c2;
  const double arc = 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(c2)));
  return arc * arc;
}

struct Operators {
  SparseSymmetricOperator stiffness;
  SparseSymmetricOperator mass;
  double total_area = 0.0;
};

inline Operators cotan_operators(const TriangleMesh& mesh, EdgeMetric metric = EdgeMetric::SphereGeodesic) {
  Operators ops;
  const int n = static_cast<int>(mesh.vertices.size());
  ops.stiffness.dimension = n;
  ops.mass.dimension = n;
  ops.stiffness.entries.reserve(mesh.faces.size() * 12);
  ops.mass.entries.reserve(mesh.faces.size() * 3);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& t = mesh.faces[f];
    // l2[k]: squared length of the edge opposite corner k.
    std::array<double, 3> l2{};
    for (int k = 0; k < 3; ++k) l2[k] = edge_length_sq(mesh.vertices[t[(k + 1) % 3]], mesh.vertices[t[(k + 2) % 3]], metric);
    const double s = 2.0 * (l2[0] * l2[1] + l2[1] * l2[2] + l2[2] * l2[0]) - (l2[0] * l2[0] + l2[1] * l2[1] + l2[2] * l2[2]);
    const double area = 0.25 * std::sqrt(std::max(s, 0.0));
    if (!(area > 1e-14)) {
      std::ostringstream os;
      os.precision(17);
      os << "face " << f << " has area " << area;
      fail(ErrorKind::DegenerateTriangle, os.str());
    }
    ops.total_area += area;
    for (int k = 0; k < 3; ++k) {
      // Corner k: cot = (b^2 + c^2 - a^2) / (4 area) with a opposite k.
      const double cot = (l2[(k + 1) % 3] + l2[(k + 2) % 3] - l2[k]) / (4.0 * area);
      const double w = 0.5 * cot;
      const int i = t[(k + 1) % 3], j = t[(k + 2) % 3];
      ops.stiffness.entries.emplace_back(i, j, -w);
      ops.stiffness.entries.emplace_back(j, i, -w);
      ops.stiffness.entries.emplace_back(i, i, w);
      ops.stiffness.entries.emplace_back(j, j, w);
      ops.mass.entries.emplace_back(t[k], t[k], area / 3.0);
    }
  }
  return ops;
}

// ---------------------------------------------------------------------------
// Eigensolver

struct EigenOptions {
  double tol = 1e-8;
  double shift = 1.0;  // factorizes L + shift M
  int block = 6;
  int max_iterations = 500;
  double cluster_rel_tol = 1e-3;
};

struct SpectrumResult {
  double lambda1 = 0.0;
  double residual = 0.0;  // max over the cluster of |L x - lambda M x| / |M x|
  int iterations = 0;
  int cluster = 0;  // Ritz values within cluster_rel_tol of lambda1
  std::vector<double> ritz_values;
  Eigen::MatrixXd eigenvectors;  // cluster vectors, M-orthonormal
};

namespace detail {

inline double m_dot(const Eigen::VectorXd& mdiag, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a.array() * mdiag.array() * b.array()).sum();
}

// Removes the constant component and M-orthonormalizes the columns (two passes of Gram-Schmidt).
inline void deflate_and_orthonormalize(Eigen::MatrixXd& x, const Eigen::VectorXd& mdiag) {
  const double ones_mass = mdiag.sum();
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      x.col(c).array() -= (mdiag.array() * x.col(c).array()).sum() / ones_mass;
      for (Eigen::Index k = 0; k < c; ++k) x.col(c) -= m_dot(mdiag, x.col(k), x.col(c)) * x.col(k);
    }
    const double nrm = std::sqrt(m_dot(mdiag, x.col(c), x.col(c)));
    if (!(nrm > 0.0) || !std::isfinite(nrm)) fail(ErrorKind::SolverStagnation, "iteration block lost rank");
    x.col(c) /= nrm;
  }
}

}  // namespace detail

/// Smallest nonzero generalized eigenvalue of (L, M) for diagonal M: subspace
/// inverse iteration on L + shift M with Rayleigh-Ritz, constants deflated
/// M-orthogonally at every step. Start vectors are deterministic.
inline SpectrumResult first_nonzero_eigenvalue(const SparseSymmetricOperator& stiffness,
                                               const SparseSymmetricOperator& mass, const EigenOptions& opts = {}) {
  if (!(opts.tol > 0.0)) fail(ErrorKind::InvalidArgument, "eigen tolerance must be positive");
  const int n = stiffness.dimension;
  if (mass.dimension != n || n < opts.block + 2) fail(ErrorKind::InvalidArgument, "operator size mismatch or too small");
  const Eigen::SparseMatrix<double> l = stiffness.matrix();
  const Eigen::SparseMatrix<double> m = mass.matrix();
  const Eigen::VectorXd mdiag = m.diagonal();
  if ((mdiag.array() <= 0.0).any()) fail(ErrorKind::InvalidArgument, "mass must be positive diagonal");

  const Eigen::SparseMatrix<double> shifted = l + opts.shift * m;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
  if (solver.info() != Eigen::Success || (solver.vectorD().array() <= 0.0).any()) {
    fail(ErrorKind::SingularShift, "L + shift M is not positive definite");
  }

  const int b = opts.block;
  Eigen::MatrixXd x(n, b);
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  for (int c = 0; c < b; ++c) {
    for (int i = 0; i < n; ++i) x(i, c) = jitter(rng);
  }
  detail::deflate_and_orthonormalize(x, mdiag);

  SpectrumResult res;
  Eigen::VectorXd theta(b);
  for (int it = 1; it <= opts.max_iterations; ++it) {
    Eigen::MatrixXd y = solver.solve((mdiag.asDiagonal() * x).eval());
    if (solver.info() != Eigen::Success) fail(ErrorKind::SingularShift, "shifted solve failed");
    detail::deflate_and_orthonormalize(y, mdiag);
    const Eigen::MatrixXd ly = l * y;
    Eigen::MatrixXd a = y.transpose() * ly;
    a = 0.5 * (a + a.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rr(a);
    x = y * rr.eigenvectors();
    theta = rr.eigenvalues();
    const Eigen::MatrixXd lx = ly * rr.eigenvectors();

    const double lambda1 = theta(0);
    const double cut = lambda1 + opts.cluster_rel_tol * std::max(1.0, std::abs(lambda1));
    int cluster = 0;
    double worst = 0.0;
    for (int c = 0; c < b && theta(c) <= cut; ++c, ++cluster) {
      const Eigen::VectorXd mx = mdiag.asDiagonal() * x.col(c);
      worst = std::max(worst, (lx.col(c) - theta(c) * mx).norm() / mx.norm());
    }
    res.iterations = it;
    res.residual = worst;
    if (worst < opts.tol) {
      if (cluster == b) fail(ErrorKind::SolverStagnation, "eigenvalue cluster fills the iteration block");
      res.lambda1 = lambda1;
      res.cluster = cluster;
      res.ritz_values.assign(theta.data(), theta.data() + b);
      res.eigenvectors = x.leftCols(cluster);
      return res;
    }
  }
  std::ostringstream os;
  os.precision(6);
  os << "no convergence after " << opts.max_iterations << " iterations, residual " << res.residual;
  fail(ErrorKind::SolverStagnation, os.str());
}

}  // namespace eigenlower::mesh
