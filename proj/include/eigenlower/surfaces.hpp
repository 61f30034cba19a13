#pragma once

// Canonical minimal hypersurfaces of the unit sphere S^{m+1}: great spheres and
// generalized Clifford tori S^p(sqrt(p/m)) x S^q(sqrt(q/m)), with exact
// curvature and spectral data.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "eigenlower/error.hpp"

namespace eigenlower {

enum class SurfaceKind { GreatSphere, Clifford };

struct CanonicalSurface {
  SurfaceKind kind = SurfaceKind::GreatSphere;
  int m = 2;
  int p = 0;  // Clifford only
  int q = 0;  // Clifford only

  std::string name() const {
    if (kind == SurfaceKind::GreatSphere) return "great_sphere(m=" + std::to_string(m) + ")";
    return "clifford(" + std::to_string(p) + "," + std::to_string(q) + ")";
  }
};

/// One principal curvature value k with its multiplicity; theta solves cot(theta) = k.
struct CurvatureFamily {
  double value = 0.0;
  int multiplicity = 0;
  double theta = std::numbers::pi / 2;
};

/// Curvatures are taken with respect to a fixed unit normal; the parallel
/// surface at distance t along that normal scales family i by cos t - k_i sin t.
struct CurvatureData {
  std::vector<CurvatureFamily> families;
  double k_max = 0.0;
  double big_lambda = 0.0;
  double t_sigma = std::numbers::pi / 2;
  double focal_distance = std::numbers::pi / 2;
  double mean_curvature = 0.0;

  int dimension() const {
    int m = 0;
    for (const auto& f : families) m += f.multiplicity;
    return m;
  }
};

namespace detail {

inline CurvatureData make_curvature(std::vector<CurvatureFamily> families) {
  CurvatureData c;
  double sum = 0.0, sum_sq = 0.0, k_max = 0.0;
  double focal = std::numbers::pi;
  for (auto& f : families) {
    f.theta = std::atan2(1.0, f.value);
    sum += f.multiplicity * f.value;
    sum_sq += f.multiplicity * f.value * f.value;
    k_max = std::max(k_max, std::abs(f.value));
    focal = std::min(focal, f.theta);
  }
  c.families = std::move(families);
  c.mean_curvature = sum;
  c.big_lambda = std::sqrt(sum_sq);
  c.k_max = k_max;
  c.focal_distance = focal;
  // T_Sigma <= focal distance, with equality when k_max is attained by a
  // positive family; the clamp removes the 1-ulp disagreement of the two atans.
  c.t_sigma = std::min(k_max > 0.0 ? std::atan(1.0 / k_max) : std::numbers::pi / 2, focal);
  return c;
}

}  // namespace detail

/// Curvature data seen from the opposite unit normal (all k_i change sign).
inline CurvatureData opposite_normal(const CurvatureData& curv) {
  std::vector<CurvatureFamily> flipped = curv.families;
  for (auto& f : flipped) f.value = -f.value;
  return detail::make_curvature(std::move(flipped));
}

struct CatalogEntry {
  CanonicalSurface surface;
  CurvatureData curvature;
};

/// Clifford torus S^p(sqrt(p/m)) x S^q(sqrt(q/m)). The normal points toward the
/// component in which the S^q factor collapses, so the p-directions carry
/// k = -sqrt(q/p) and the q-directions k = +sqrt(p/q), and the focal distance
/// is arctan(sqrt(q/p)).
inline CatalogEntry clifford(int p, int q) {
  if (p < 1 || q < 1) fail(ErrorKind::InvalidDimension, "clifford requires p >= 1 and q >= 1");
  CatalogEntry e;
  e.surface = {SurfaceKind::Clifford, p + q, p, q};
  const double kp = -std::sqrt(static_cast<double>(q) / p);
  const double kq = std::sqrt(static_cast<double>(p) / q);
  e.curvature = detail::make_curvature({{kp, p, 0.0}, {kq, q, 0.0}});
  return e;
}

inline CatalogEntry great_sphere(int m) {
  if (m < 2) fail(ErrorKind::InvalidDimension, "great_sphere requires m >= 2");
  CatalogEntry e;
  e.surface = {SurfaceKind::GreatSphere, m, 0, 0};
  e.curvature = detail::make_curvature({{0.0, m, 0.0}});
  return e;
}

inline CurvatureData curvature_of(const CanonicalSurface& s) {
  return s.kind == SurfaceKind::Clifford ? clifford(s.p, s.q).curvature : great_sphere(s.m).curvature;
}

/// Eigenvalues of the Laplacian on S^n(r): k(k+n-1)/r^2.
inline double sphere_eigenvalue(int k, int n, double radius_sq) {
  return k * (k + n - 1) / radius_sq;
}

/// Least nonzero eigenvalue, found by enumerating the spectrum rather than by
/// quoting m. Clifford: product spectrum k(k+p-1) m/p + l(l+q-1) m/q, 0 <= k,l <= 5.
inline double analytic_lambda1(const CanonicalSurface& s) {
  if (s.kind == SurfaceKind::GreatSphere) {
    return sphere_eigenvalue(1, s.m, 1.0);
  }
  const double rp2 = static_cast<double>(s.p) / s.m;
  const double rq2 = static_cast<double>(s.q) / s.m;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 5; ++k) {
    for (int l = 0; l <= 5; ++l) {
      const double ev = sphere_eigenvalue(k, s.p, rp2) + sphere_eigenvalue(l, s.q, rq2);
      if (ev > 0.0) best = std::min(best, ev);
    }
  }
  return best;
}

/// |S^n(1)| = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
inline double unit_sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

inline double surface_area(const CanonicalSurface& s) {
  if (s.kind == SurfaceKind::GreatSphere) return unit_sphere_area(s.m);
  const double rp = std::sqrt(static_cast<double>(s.p) / s.m);
  const double rq = std::sqrt(static_cast<double>(s.q) / s.m);
  return unit_sphere_area(s.p) * std::pow(rp, s.p) * unit_sphere_area(s.q) * std::pow(rq, s.q);
}

/// The ground-truth surfaces: great spheres for m = 2..6 and Clifford tori with
/// 1 <= p, q <= max_factor (both orderings, so both normal sides appear).
inline std::vector<CatalogEntry> catalog(int max_factor = 6) {
  std::vector<CatalogEntry> out;
  for (int m = 2; m <= 6; ++m) out.push_back(great_sphere(m));
  for (int p = 1; p <= max_factor; ++p) {
    for (int q = 1; q <= max_factor; ++q) out.push_back(clifford(p, q));
  }
  return out;
}

}  // namespace eigenlower
