// Command-line front end: bound tables, Lambda sweeps, the Clifford Rayleigh
// pipeline, mesh spectra, invariant suites and markdown reports.
//
// Exit codes: 0 success, 1 mathematical or solver failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eigenlower/eigenlower.hpp"

namespace {

using eigenlower::report::Json;
using eigenlower::report::Provenance;
using eigenlower::report::Table;
using eigenlower::report::format_number;
using eigenlower::report::tagged;

struct Globals {
  std::string format = "auto";
  std::string output;
  bool no_timestamp = false;
  double quad_tol = 1e-10;
  double ode_tol = 1e-9;
  double eig_tol = 1e-8;
  std::size_t grid_n = 1000;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) eigenlower::fail(eigenlower::ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string resolve_format(const Globals& g, const char* fallback) { return g.format == "auto" ? fallback : g.format; }

Json envelope(const Globals& g, const std::string& command) {
  Json j;
  j["command"] = command;
  if (!g.no_timestamp) j["generated_at"] = eigenlower::report::utc_timestamp();
  return j;
}

void flatten(const Json& j, const std::string& prefix, Table& table) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), table);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", table);
  } else if (j.is_number_float()) {
    table.add_row({prefix, format_number(j.get<double>())});
  } else if (j.is_string()) {
    table.add_row({prefix, j.get<std::string>()});
  } else {
    table.add_row({prefix, j.dump()});
  }
}

void emit_object(const Json& j, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  Table t{{"key", "value"}, {}};
  flatten(j, "", t);
  if (format == "csv") eigenlower::report::write_csv(t, out);
  else eigenlower::report::write_markdown(t, out);
}

void emit_table(const Table& t, const Json& meta, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    eigenlower::report::write_csv(t, out);
  } else if (format == "md") {
    eigenlower::report::write_markdown(t, out);
  } else {
    Json j = meta;
    j["rows"] = eigenlower::report::table_to_json(t);
    out << j.dump(2) << '\n';
  }
}

// ---------------------------------------------------------------------------

int cmd_bounds(const Globals& g, int m, double lambda, std::optional<double> c_chi) {
  namespace b = eigenlower::bounds;
  const auto rep = b::compare(m, lambda, c_chi);
  Table t{{"bound", "value", "note"}, {}};
  t.add_row({"choi_wang", format_number(rep.choi_wang), "m/2"});
  t.add_row({"main", format_number(rep.main_bound), rep.main_is_rigid ? "rigid: Lambda <= sqrt(m)" : ""});
  t.add_row({"dss", eigenlower::report::format_optional(rep.dss_bound), rep.dss_bound ? "" : "undefined: Lambda < sqrt(m)"});
  if (rep.genus_bound) t.add_row({"genus", format_number(*rep.genus_bound), "C(chi) = " + format_number(*c_chi)});
  Json meta = envelope(g, "bounds");
  meta["m"] = m;
  meta["lambda"] = lambda;
  meta["main_is_rigid"] = rep.main_is_rigid;
  meta["dss_a"] = rep.dss_a;
  meta["dss_b"] = rep.dss_b;
  Output out(g.output);
  emit_table(t, meta, resolve_format(g, "csv"), out.stream());
  return 0;
}

struct LambdaRange {
  double lo = 0.0, hi = 0.0;
  int steps = 0;
};

LambdaRange parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw CLI::ValidationError("--lambda-range", "expected lo,hi,steps");
  LambdaRange r;
  try {
    std::size_t pos = 0;
    r.lo = std::stod(parts[0], &pos);
    if (pos != parts[0].size()) throw std::invalid_argument("lo");
    r.hi = std::stod(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument("hi");
    r.steps = std::stoi(parts[2], &pos);
    if (pos != parts[2].size()) throw std::invalid_argument("steps");
  } catch (const std::exception&) {
    throw CLI::ValidationError("--lambda-range", "expected numbers lo,hi,steps");
  }
  if (!(r.lo >= 0.0) || !(r.hi >= r.lo) || r.steps < 2) {
    throw CLI::ValidationError("--lambda-range", "need 0 <= lo <= hi and steps >= 2");
  }
  return r;
}

int cmd_sweep(const Globals& g, int m, const LambdaRange& range) {
  namespace b = eigenlower::bounds;
  const auto rows = eigenlower::parallel::map_indexed(static_cast<std::size_t>(range.steps), [&](std::size_t i) {
    const double l = range.lo + (range.hi - range.lo) * static_cast<double>(i) / (range.steps - 1);
    return b::compare(m, l);
  });
  Table t{{"lambda", "choi_wang", "main", "dss", "main_minus_dss"}, {}};
  int violations = 0;
  for (const auto& r : rows) {
    std::string diff;
    if (r.dss_bound) {
      diff = format_number(r.main_bound - *r.dss_bound);
      if (r.main_bound < *r.dss_bound) ++violations;
    }
    t.add_row({format_number(r.big_lambda), format_number(r.choi_wang), format_number(r.main_bound),
               eigenlower::report::format_optional(r.dss_bound), diff});
  }
  Json meta = envelope(g, "sweep");
  meta["m"] = m;
  Output out(g.output);
  emit_table(t, meta, resolve_format(g, "csv"), out.stream());
  if (violations > 0) {
    std::cerr << "main < dss at " << violations << " sweep points\n";
    return 1;
  }
  return 0;
}

Json side_report(const eigenlower::CanonicalSurface& surf, eigenlower::rayleigh::ExtensionConfig config, const Globals& g) {
  namespace r = eigenlower::rayleigh;
  r::ProfileOptions opts;
  opts.ode_tol = g.ode_tol;
  opts.quad_tol = g.quad_tol;
  // The refinement threshold sits above the ODE noise floor.
  opts.refine_tol = std::max(1e-6, 100.0 * g.ode_tol);
  const auto prof = r::solve_harmonic_profile(surf, config, opts);
  const auto rep = r::compute_rayleigh(prof);
  const auto& side = prof.side;
  const int m = surf.m;
  Json j;
  j["collapsing_factor"] = r::to_string(config.collapsing);
  j["eigenfunction_factor"] = r::to_string(config.eigenfunction);
  j["focal_distance"] = tagged(side.t_focal, Provenance::Analytic);
  j["sign_term"] = tagged(rep.sign_term, Provenance::Analytic);
  j["satisfies_sign_convention"] = side.satisfies_sign_convention();
  j["grid_cells"] = prof.cells();
  j["radial_residual"] = prof.max_residual();
  j["q_value"] = tagged(rep.q_value, Provenance::Ode);
  j["q_minus_m_plus_1"] = rep.q_margin();
  j["dirichlet_energy"] = tagged(rep.dirichlet_energy, Provenance::Quadrature);
  j["flux_energy"] = tagged(rep.flux_energy, Provenance::Ode);
  j["l2_mass"] = tagged(rep.l2_mass, Provenance::Quadrature);
  j["lambda_from_q"] = tagged(rep.lambda_lower, Provenance::Ode);
  j["c1"] = tagged(rep.c1, Provenance::Analytic);
  j["c2"] = tagged(rep.c2, Provenance::Analytic);
  const double outer = 12.0 * side.curvature.big_lambda + m + 11.0;
  const double ratio = rep.l2_mass / rep.dirichlet_energy;
  j["inverse_poincare"] = {{"mass_over_energy", ratio},
                           {"margin_over_c2", ratio - rep.c2},
                           {"margin_over_theorem_floor", ratio - 1.0 / (4.0 * outer * outer + 1.0)}};
  const auto pol = r::verify_pol(m, side.lambda1, rep.q_value);
  j["quadratic_check"] = {{"threshold", pol.threshold}, {"passed", pol.passed}};
  const auto eta = r::eta_verification(prof, rep.c1, 0.0, g.grid_n);
  j["eta"] = {{"eta0", eta.eta0},
              {"eta_prime0", eta.eta_prime0_stencil},
              {"t_epsilon", eta.t_epsilon},
              {"max_damped_lhs", eta.max_damped_lhs},
              {"damped_bound", eta.damped_bound},
              {"damped_holds", eta.damped_holds},
              {"integrated_holds", eta.integrated_holds},
              {"mass_floor", eta.mass_floor},
              {"mass_floor_holds", eta.mass_floor_holds}};
  return j;
}

int cmd_clifford(const Globals& g, int p, int q) {
  namespace r = eigenlower::rayleigh;
  const auto entry = eigenlower::clifford(p, q);
  const auto& c = entry.curvature;
  Json j = envelope(g, "clifford");
  j["surface"] = entry.surface.name();
  j["m"] = entry.surface.m;
  j["p"] = p;
  j["q"] = q;
  Json fam = Json::array();
  for (const auto& f : c.families) fam.push_back({{"k", f.value}, {"multiplicity", f.multiplicity}});
  j["curvature"] = {{"families", fam},        {"k_max", c.k_max},         {"big_lambda", c.big_lambda},
                    {"t_sigma", c.t_sigma},   {"focal_distance", c.focal_distance}};
  j["lambda1"] = tagged(eigenlower::analytic_lambda1(entry.surface), Provenance::Analytic);
  j["area"] = tagged(eigenlower::surface_area(entry.surface), Provenance::Analytic);
  const auto chosen = r::sign_convention_config(entry.surface);
  Json sides = Json::array();
  for (auto collapsing : {r::Factor::P, r::Factor::Q}) {
    if (p == q && collapsing == r::Factor::Q) break;  // mirror image of the p side
    sides.push_back(side_report(entry.surface, {collapsing, r::Factor::P}, g));
  }
  j["chosen_side"] = r::to_string(chosen.collapsing);
  j["sides"] = sides;
  Output out(g.output);
  emit_object(j, resolve_format(g, "json"), out.stream());
  return 0;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--grid", "expected NUxNV, e.g. 64x64");
  try {
    std::size_t a = 0, b = 0;
    const int nu = std::stoi(text.substr(0, x), &a);
    const int nv = std::stoi(text.substr(x + 1), &b);
    if (a != x || b != text.size() - x - 1) throw std::invalid_argument("grid");
    return {nu, nv};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected NUxNV, e.g. 64x64");
  }
}

int cmd_mesh(const Globals& g, const std::string& input, const std::string& grid, int sphere_subdiv, bool renormalize,
             const std::string& save_path, const std::string& metric_name) {
  namespace ms = eigenlower::mesh;
  ms::TriangleMesh mesh;
  std::string source;
  std::size_t renormalized = 0;
  const int sources = (!input.empty()) + (!grid.empty()) + (sphere_subdiv >= 0);
  if (sources != 1) throw CLI::ValidationError("mesh-spectrum", "give exactly one of --input, --grid, --sphere");
  if (!input.empty()) {
    ms::LoadOptions lo;
    lo.renormalize = renormalize;
    auto loaded = ms::load_off(input, lo);
    mesh = std::move(loaded.mesh);
    renormalized = loaded.renormalized;
    if (renormalized > 0) std::cerr << "warning: renormalized " << renormalized << " vertices onto S^3\n";
    source = input;
  } else if (!grid.empty()) {
    const auto [nu, nv] = parse_grid(grid);
    mesh = ms::clifford_mesh(nu, nv);
    source = "clifford_mesh(" + grid + ")";
  } else {
    mesh = ms::great_sphere_mesh(sphere_subdiv);
    source = "great_sphere_mesh(" + std::to_string(sphere_subdiv) + ")";
  }
  const auto stats = ms::validate(mesh);
  if (!save_path.empty()) ms::save_off(mesh, save_path);
  const auto metric = metric_name == "chordal" ? ms::EdgeMetric::Chordal : ms::EdgeMetric::SphereGeodesic;
  const auto ops = ms::cotan_operators(mesh, metric);
  ms::EigenOptions eo;
  eo.tol = g.eig_tol;
  const auto res = ms::first_nonzero_eigenvalue(ops.stiffness, ops.mass, eo);
  Json j = envelope(g, "mesh-spectrum");
  j["source"] = source;
  j["edge_metric"] = ms::to_string(metric);
  j["lambda1"] = tagged(res.lambda1, Provenance::Mesh);
  j["residual"] = res.residual;
  j["iterations"] = res.iterations;
  j["cluster"] = res.cluster;
  j["nV"] = stats.vertices;
  j["nF"] = stats.faces;
  j["euler_characteristic"] = stats.euler_characteristic;
  j["area"] = ops.total_area;
  j["renormalized_vertices"] = renormalized;
  Output out(g.output);
  emit_object(j, resolve_format(g, "json"), out.stream());
  return 0;
}

int cmd_verify(const Globals& g, const std::string& suite) {
  eigenlower::verify::Tolerances tol;
  tol.quad_tol = g.quad_tol;
  tol.ode_tol = g.ode_tol;
  tol.eig_tol = g.eig_tol;
  tol.grid_n = g.grid_n;
  const auto summary = eigenlower::verify::run(suite, tol);
  Output out(g.output);
  auto& os = out.stream();
  const std::string format = resolve_format(g, "text");
  if (format == "text") {
    for (const auto& s : summary.suites) {
      for (const auto& c : s.checks) {
        os << (c.passed ? "[PASS] " : "[FAIL] ") << s.name << ": " << c.name << " (margin " << format_number(c.margin) << ")";
        if (!c.passed && !c.detail.empty()) os << " -- " << c.detail;
        os << '\n';
      }
    }
    for (const auto& s : summary.suites) {
      os << "suite " << s.name << ": " << s.checks.size() << " checks, " << s.failures() << " failures, worst margin "
         << format_number(s.worst_margin()) << '\n';
    }
  } else {
    Table t{{"suite", "check", "passed", "margin", "detail"}, {}};
    for (const auto& s : summary.suites) {
      for (const auto& c : s.checks) t.add_row({s.name, c.name, c.passed ? "true" : "false", format_number(c.margin), c.detail});
    }
    Json meta = envelope(g, "verify");
    meta["failures"] = summary.failures();
    emit_table(t, meta, format, os);
  }
  return summary.exit_status();
}

int cmd_report(const Globals& g, const std::vector<int>& ms, const std::vector<double>& lambdas) {
  namespace b = eigenlower::bounds;
  Table t{{"m", "Lambda", "m/2", "dss", "main", "main - m/2", "dss - m/2", "rigid"}, {}};
  for (int m : ms) {
    for (double l : lambdas) {
      const auto r = b::compare(m, l);
      t.add_row({std::to_string(m), format_number(l), format_number(r.choi_wang), eigenlower::report::format_optional(r.dss_bound),
                 format_number(r.main_bound), format_number(r.main_bound - r.choi_wang),
                 r.dss_bound ? format_number(*r.dss_bound - r.choi_wang) : std::string(), r.main_is_rigid ? "yes" : "no"});
    }
  }
  Output out(g.output);
  auto& os = out.stream();
  const std::string format = resolve_format(g, "md");
  if (format == "md") {
    os << "# First eigenvalue lower bounds\n\n";
    if (!g.no_timestamp) os << "Generated " << eigenlower::report::utc_timestamp() << ".\n\n";
    eigenlower::report::write_markdown(t, os);
  } else {
    emit_table(t, envelope(g, "report"), format, os);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified lower bounds for the first Laplace eigenvalue of minimal hypersurfaces in spheres"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"auto", "csv", "json", "md", "text"}));
  app.add_option("--output", g.output, "Write to this file instead of stdout");
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit generated_at for byte-identical reruns");
  app.add_option("--quad-tol", g.quad_tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--ode-tol", g.ode_tol, "ODE step tolerance")->check(CLI::PositiveNumber);
  app.add_option("--eig-tol", g.eig_tol, "Eigen residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--grid-n", g.grid_n, "Sample count for grid checks")->check(CLI::Range(3, 10000000));

  int m = 2;
  double lambda = 0.0;
  std::optional<double> c_chi;
  auto* bounds = app.add_subcommand("bounds", "Evaluate every bound at (m, Lambda)");
  bounds->add_option("--m", m, "Dimension of the hypersurface")->required()->check(CLI::Range(2, 1000000));
  bounds->add_option("--lambda", lambda, "Lambda = max |A|")->required()->check(CLI::NonNegativeNumber);
  bounds->add_option("--c-chi", c_chi, "Curvature constant C(chi) for the genus bound")->check(CLI::PositiveNumber);

  std::string range_text;
  auto* sweep = app.add_subcommand("sweep", "Tabulate bounds over a Lambda range");
  sweep->add_option("--m", m, "Dimension")->required()->check(CLI::Range(2, 1000000));
  sweep->add_option("--lambda-range", range_text, "lo,hi,steps")->required();

  int p = 1, q = 1;
  auto* cliff = app.add_subcommand("clifford", "Harmonic-extension pipeline on a Clifford torus");
  cliff->add_option("--p", p, "First factor dimension")->required()->check(CLI::Range(1, 64));
  cliff->add_option("--q", q, "Second factor dimension")->required()->check(CLI::Range(1, 64));

  std::string input, grid, save_path, metric = "geodesic";
  int sphere = -1;
  bool renormalize = false;
  auto* mesh = app.add_subcommand("mesh-spectrum", "First nonzero eigenvalue of a triangulated surface in S^3");
  mesh->add_option("--input", input, "4-D OFF file");
  mesh->add_option("--grid", grid, "Generate clifford_mesh(NU, NV), e.g. 64x64");
  mesh->add_option("--sphere", sphere, "Generate a great-sphere icosphere with this many subdivisions")->check(CLI::Range(0, 7));
  mesh->add_flag("--renormalize", renormalize, "Project off-sphere vertices back onto S^3");
  mesh->add_option("--save-off", save_path, "Write the mesh as OFF");
  mesh->add_option("--metric", metric, "Edge lengths")->check(CLI::IsMember({"geodesic", "chordal"}));

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember({"all", "bump", "tube", "rayleigh", "bounds", "mesh"}));

  std::vector<int> report_ms = {2, 3, 4};
  std::vector<double> report_lambdas = {1.0, 2.0, 3.0, 5.0, 10.0, 100.0};
  auto* rep = app.add_subcommand("report", "Markdown comparison table over an (m, Lambda) grid");
  rep->add_option("--m", report_ms, "Dimensions")->delimiter(',')->check(CLI::Range(2, 1000000));
  rep->add_option("--lambda", report_lambdas, "Lambda values")->delimiter(',')->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(g, m, lambda, c_chi);
    if (sweep->parsed()) return cmd_sweep(g, m, parse_range(range_text));
    if (cliff->parsed()) return cmd_clifford(g, p, q);
    if (mesh->parsed()) return cmd_mesh(g, input, grid, sphere, renormalize, save_path, metric);
    if (verify->parsed()) return cmd_verify(g, suite);
    if (rep->parsed()) return cmd_report(g, report_ms, report_lambdas);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const eigenlower::Error& e) {
    std::cerr << "error [" << eigenlower::to_string(e.kind()) << "]: " << e.what() << '\n';
    return e.is_input_error() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
