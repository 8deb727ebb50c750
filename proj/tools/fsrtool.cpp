#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "fsr/disk_arcs.hpp"
#include "fsr/euclidean.hpp"
#include "fsr/fatpath.hpp"
#include "fsr/fsr_io.hpp"
#include "fsr/normal_curves.hpp"
#include "fsr/render.hpp"
#include "fsr/slope.hpp"

namespace {

using namespace fsr;

// Exit status for domain failures such as validation violations.
struct DomainFailure {
  int code = 1;
};

// Accepts a .fsr path, "builtin:NAME" or "euclid:D,C".
FsrDocument load_document(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) {
    FsrDocument doc;
    doc.rule = builtin(spec.substr(8));
    doc.name = doc.rule->name;
    return doc;
  }
  if (spec.rfind("euclid:", 0) == 0) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--rule", "expected euclid:D,C");
    FsrDocument doc;
    doc.rule = build_case2_fsr(std::stoi(spec.substr(7, comma - 7)), std::stoi(spec.substr(comma + 1)));
    doc.name = doc.rule->name;
    return doc;
  }
  return load_fsr(spec);
}

SubdivisionTower load_tower(const std::string& spec) {
  FsrDocument doc = load_document(spec);
  if (!doc.rule) throw Error("'" + spec + "' is a complex, not a subdivision rule");
  const ValidationReport report = validate_rule(*doc.rule);
  if (!report.ok()) {
    std::cerr << report.to_string();
    throw DomainFailure{};
  }
  return SubdivisionTower(std::move(*doc.rule));
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

MetricPoint point_of(const Complex& c, const std::string& id) {
  const auto ref = c.find(id);
  if (!ref) throw Error("unknown cell '" + id + "'");
  return {*ref};
}

int vertex_of(const Complex& c, const std::string& id) {
  const int v = c.vertex_index(id);
  if (v < 0) throw Error("unknown vertex '" + id + "'");
  return v;
}

// Malformed argument values are usage errors, like unknown flags.
template <class F>
auto argument(const char* name, F&& parse) {
  try {
    return parse();
  } catch (const Error& e) {
    throw CLI::ValidationError(name, e.what());
  }
}

IntMatrix2 matrix_arg(const std::string& text) {
  return argument("--matrix", [&] { return IntMatrix2::parse(text); });
}

std::string fixed(const Real& x, int digits) { return x.str(digits, std::ios::fixed); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite subdivision rules: validation, subdivision, metrics, Euclidean maps and curves"};
  app.require_subcommand(1);

  std::string rule, complex_path, out, matrix, slope, curve, from, to, tile, u1, u2, v;
  int n = 0, level = 0, steps = 5, d = 2, c = 0, samples = 0, precision = 12;
  std::uint64_t seed = 1;
  double j_bound = 1;
  bool stats_flag = false;

  auto* validate = app.add_subcommand("validate", "Check a rule or complex against the structural invariants");
  validate->add_option("--rule,--complex", rule, ".fsr file, builtin:NAME or euclid:D,C")->required();
  validate->add_option("--out", out, "write the document in canonical form");

  auto* subdivide = app.add_subcommand("subdivide", "Build the tower to level n");
  subdivide->add_option("--rule", rule)->required();
  subdivide->add_option("-n", n, "level")->required()->check(CLI::NonNegativeNumber);
  subdivide->add_flag("--stats", stats_flag, "print cell counts of level n");
  subdivide->add_option("--out", out, "write level n as a standalone .fsr complex");

  auto* stats = app.add_subcommand("stats", "Cell counts and Euler characteristic per level");
  stats->add_option("--rule", rule)->required();
  stats->add_option("-n", n, "deepest level")->required()->check(CLI::NonNegativeNumber);

  auto* fatpath = app.add_subcommand("fatpath", "Fat-path distance between two cells of a level");
  fatpath->add_option("--rule", rule)->required();
  fatpath->add_option("--level", level)->check(CLI::NonNegativeNumber);
  fatpath->add_option("--from", from, "cell id")->required();
  fatpath->add_option("--to", to, "cell id")->required();

  auto* nonexp = app.add_subcommand("nonexpansion", "Check that lifted tile paths do not expand");
  nonexp->add_option("--rule", rule)->required();
  nonexp->add_option("--level", level)->check(CLI::NonNegativeNumber);
  nonexp->add_option("--samples", samples, "random pairs instead of all pairs");
  nonexp->add_option("--seed", seed);

  auto* disk = app.add_subcommand("disk-arc", "Simple edge path through three vertices of a disk");
  disk->add_option("--complex", complex_path)->required();
  disk->add_option("--u1", u1)->required();
  disk->add_option("--u2", u2)->required();
  disk->add_option("--v", v)->required();

  auto* classify_cmd = app.add_subcommand("classify-euclid", "Classify an integer matrix map of the pillowcase");
  classify_cmd->add_option("--matrix", matrix, "a11,a12,a21,a22")->required();

  auto* normal = app.add_subcommand("normal-form", "Conjugate a unit-eigenvalue matrix to [[d,c],[0,1]]");
  normal->add_option("--matrix", matrix)->required();

  auto* build = app.add_subcommand("build-euclid-fsr", "Write the subdivision rule of (x,y) -> (dx+cy, y)");
  build->add_option("--d", d)->required();
  build->add_option("--c", c)->required();
  build->add_option("--out", out);

  auto* growth = app.add_subcommand("growth-cert", "Growth certificate for a contracting matrix");
  growth->add_option("--matrix", matrix)->required();
  growth->add_option("--J", j_bound, "perturbation bound")->check(CLI::NonNegativeNumber);
  growth->add_option("-n", n, "iterations")->required()->check(CLI::PositiveNumber);
  growth->add_option("--precision", precision, "digits printed")->check(CLI::Range(1, 45));
  growth->add_option("--seed", seed);

  auto* slope_cmd = app.add_subcommand("slope-orbit", "Pullback orbit of a slope under a matrix");
  slope_cmd->add_option("--matrix", matrix)->required();
  slope_cmd->add_option("--slope", slope, "p,q")->required();
  slope_cmd->add_option("--steps", steps)->check(CLI::NonNegativeNumber);

  auto* curve_cmd = app.add_subcommand("curve-pullback", "Pullback relation graph of a normal curve");
  curve_cmd->add_option("--rule", rule)->required();
  curve_cmd->add_option("--curve", curve, "tile:position,...")->required();
  curve_cmd->add_option("--steps", steps)->check(CLI::NonNegativeNumber);

  auto* render = app.add_subcommand("render", "SVG drawing of a tower level");
  render->add_option("--rule", rule)->required();
  render->add_option("--level", level)->check(CLI::NonNegativeNumber);
  render->add_option("--tile", tile, "base tile id; all base tiles when omitted");
  render->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*validate) {
      const FsrDocument doc = load_document(rule);
      ValidationReport report;
      if (doc.rule) {
        report = validate_rule(*doc.rule);
      } else if (derive_boundary(*doc.complex) && !derive_boundary(*doc.complex)->empty()) {
        report = validate_disk(as_disk(*doc.complex));
      } else {
        report = validate_sphere(*doc.complex);
      }
      std::cout << "name=" << doc.name << " kind=" << (doc.rule ? "rule" : "complex") << "\n";
      if (report.ok()) {
        std::cout << "ok\n";
        if (doc.rule) std::cout << "degree=" << degree(*doc.rule) << "\n";
        if (!out.empty()) write_output(out, serialize(doc));
      } else {
        std::cout << report.to_string();
        return 1;
      }
    } else if (*subdivide) {
      SubdivisionTower t = load_tower(rule);
      t.subdivide_to(n);
      const Complex& x = t.complex(n);
      if (stats_flag)
        std::cout << "level=" << n << " vertices=" << x.vertex_count() << " edges=" << x.edge_count()
                  << " tiles=" << x.tile_count() << " euler=" << euler_characteristic(x) << "\n";
      if (!out.empty()) write_output(out, serialize_complex(t.rule().name + "_level" + std::to_string(n), x));
      if (!stats_flag && out.empty()) std::cout << "tiles=" << x.tile_count() << "\n";
    } else if (*stats) {
      SubdivisionTower t = load_tower(rule);
      t.subdivide_to(n);
      std::cout << "level\tvertices\tedges\ttiles\teuler\n";
      for (int i = 0; i <= n; ++i) {
        const Complex& x = t.complex(i);
        std::cout << i << "\t" << x.vertex_count() << "\t" << x.edge_count() << "\t" << x.tile_count() << "\t"
                  << euler_characteristic(x) << "\n";
      }
    } else if (*fatpath) {
      SubdivisionTower t = load_tower(rule);
      t.subdivide_to(level);
      const Complex& x = t.complex(level);
      const FatPath p = fat_path(x, point_of(x, from), point_of(x, to));
      std::cout << "distance=" << fat_path_distance(x, point_of(x, from), point_of(x, to)) << "\npath=";
      for (std::size_t i = 0; i < p.tiles.size(); ++i) std::cout << (i ? "," : "") << x.tile(p.tiles[i]).id;
      std::cout << "\n";
    } else if (*nonexp) {
      SubdivisionTower t = load_tower(rule);
      t.subdivide_to(level + 1);
      std::vector<std::pair<int, int>> pairs;
      const int tiles = t.complex(level).tile_count();
      if (samples > 0) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, tiles - 1);
        for (int i = 0; i < samples; ++i) pairs.emplace_back(pick(rng), pick(rng));
      }
      const auto checks = check_pullback_nonexpansion(t, level, pairs);
      int failures = 0;
      for (const auto& ch : checks)
        if (!ch.pass) {
          ++failures;
          std::cout << "FAIL " << t.complex(level).tile(ch.a).id << " " << t.complex(level).tile(ch.b).id
                    << " k=" << ch.k << " k_lifted=" << ch.k_lifted << "\n";
        }
      std::cout << "pairs=" << checks.size() << " failures=" << failures << "\n";
      if (failures) return 1;
    } else if (*disk) {
      const FsrDocument doc = load_document(complex_path);
      if (doc.rule) throw Error("disk-arc expects a standalone disk complex");
      const DiskComplex x = as_disk(*doc.complex);
      const ValidationReport report = validate_disk(x);
      if (!report.ok()) {
        std::cout << report.to_string();
        return 1;
      }
      const Complex& cx = x.complex;
      const int a = vertex_of(cx, u1), b = vertex_of(cx, u2), m = vertex_of(cx, v);
      const EdgePath p = three_point_arc(x, a, b, m);
      std::cout << "vertices=";
      for (std::size_t i = 0; i < p.vertices.size(); ++i) std::cout << (i ? "," : "") << cx.vertex_id(p.vertices[i]);
      std::cout << "\nedges=";
      for (std::size_t i = 0; i < p.edges.size(); ++i) std::cout << (i ? "," : "") << cx.edge(p.edges[i]).id;
      const bool ok = is_three_point_arc(cx, p, a, b, m);
      std::cout << "\nvalid=" << (ok ? "yes" : "no") << "\n";
      if (!ok) return 1;
    } else if (*classify_cmd) {
      const IntMatrix2 a = matrix_arg(matrix);
      const EuclidClass k = classify(a);
      Real lambda_min = k.discriminant < 0 ? Real(boost::multiprecision::sqrt(Real(std::llabs(k.det)))) : abs(k.lambda());
      std::cout << "class=" << to_string(k.kind) << " lambda_min≈" << fixed(lambda_min, 6) << "\n" << k.describe() << "\n";
    } else if (*normal) {
      const IntMatrix2 a = matrix_arg(matrix);
      const NormalForm f = normal_form(a);
      std::cout << "d=" << f.d << " c=" << f.c << " sign=" << f.sign << "\nU=" << f.u.to_string()
                << "\nform=" << f.form().to_string() << "\neigenvector=" << f.eigenvector[0] << ","
                << f.eigenvector[1] << "\ncertified=" << (f.certifies(a) ? "yes" : "no") << "\n";
      if (!f.certifies(a)) return 1;
    } else if (*build) {
      const SubdivisionRule r = build_case2_fsr(d, c);
      const ValidationReport report = validate_rule(r);
      if (!report.ok()) {
        std::cerr << report.to_string();
        return 1;
      }
      write_output(out, serialize(r));
    } else if (*growth) {
      const GrowthCertificate g = growth_certificate(matrix_arg(matrix), Real(j_bound), n, seed);
      std::cout << "lambda=" << fixed(g.lambda, precision) << " K=" << fixed(g.k, precision) << " J=" << fixed(g.j, 3)
                << " threshold=" << fixed(g.threshold, precision) << "\nx=" << fixed(g.x[0], precision) << ","
                << fixed(g.x[1], precision) << "\n";
      std::cout << "n\tactual\tlower_bound\tperturbed\tratio\n";
      for (const GrowthRow& row : g.rows)
        std::cout << row.n << "\t" << fixed(row.actual, precision) << "\t" << fixed(row.lower_bound, precision) << "\t"
                  << fixed(row.perturbed, precision) << "\t" << fixed(row.ratio, precision) << "\n";
      std::cout << "lower_bound_monotone=" << g.lower_bound_monotone << " actual_dominates=" << g.actual_dominates
                << " perturbed_dominates=" << g.perturbed_dominates << " ratio_error=" << g.ratio_error.str(3) << "\n";
      if (!g.lower_bound_monotone || !g.actual_dominates || !g.perturbed_dominates) return 1;
    } else if (*slope_cmd) {
      const IntMatrix2 a = matrix_arg(matrix);
      const SlopeClass w = argument("--slope", [&] { return SlopeClass::parse(slope); });
      const OrbitReport r = pullback_orbit(a, w, steps);
      std::cout << "i\tw\tu\tg\tm\n";
      for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const PullbackStep& s = r.steps[i];
        std::cout << i << "\t" << s.w.to_string() << "\t" << s.u.to_string() << "\t" << s.g << "\t" << s.m << "\n";
      }
      std::cout << r.verdict() << "\nwandering_univalent=" << is_wandering_univalent_within(a, w, steps).to_string()
                << "\n";
    } else if (*curve_cmd) {
      SubdivisionTower t = load_tower(rule);
      t.subdivide_to(1);
      const Complex& x = t.complex(0);
      const NormalCurve start = parse_curve(x, curve);
      const NormalCurve reduced = reduce_curve(x, start);
      std::cout << "start=" << format_curve(x, reduced.crossings) << " " << classify_curve(x, reduced).to_string(x)
                << "\n";
      const CurvePullbackResult pb = pullback_curve(t, reduced);
      for (const CurveComponent& comp : pb.components) {
        std::cout << "component degree=" << comp.degree << " lifted=" << comp.lifted_crossings
                  << " projected=" << comp.projected_crossings << " reduced=" << comp.curve.crossings.size() << " ["
                  << format_curve(x, comp.curve.crossings) << "] " << classify_curve(x, comp.curve).to_string(x) << "\n";
      }
      std::cout << "degree_sum=" << pb.total << " rule_degree=" << degree(t.rule()) << "\n";
      const CurveOrbitReport orbit = pullback_orbit_curves(t, reduced, steps);
      std::cout << orbit.to_string(x);
      if (!orbit.degree_partition) return 1;
    } else if (*render) {
      SubdivisionTower t = load_tower(rule);
      RenderSpec spec{level, {}};
      if (!tile.empty()) {
        spec.base_tile = t.complex(0).tile_index(tile);
        if (*spec.base_tile < 0) throw Error("unknown base tile '" + tile + "'");
      }
      write_output(out, render_svg(t, spec));
    }
  } catch (const DomainFailure& f) {
    return f.code;
  } catch (const fsr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
