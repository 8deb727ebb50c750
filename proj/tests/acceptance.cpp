// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "fsr/disk_arcs.hpp"
#include "fsr/euclidean.hpp"
#include "fsr/fatpath.hpp"
#include "fsr/fsr_io.hpp"
#include "fsr/normal_curves.hpp"
#include "fsr/render.hpp"
#include "fsr/slope.hpp"
#include "oracles.hpp"

using namespace fsr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cubic_structure() {
  const SubdivisionRule r = builtin("cubic_example");
  const bool ok = validate_rule(r).ok() && r.base.vertex_count() == 4 && r.base.edge_count() == 4 &&
                  r.base.tile_count() == 2 && degree(r) == 3;
  return {ok, "V=" + std::to_string(r.base.vertex_count()) + " E=" + std::to_string(r.base.edge_count()) +
                  " F=" + std::to_string(r.base.tile_count()) + " degree=" + std::to_string(degree(r))};
}

Outcome growth_law() {
  SubdivisionTower t(builtin("cubic_example"));
  t.subdivide_to(8);
  Outcome o;
  long expected = 2;
  for (int n = 0; n <= 8; ++n, expected *= 3) {
    const Complex& c = t.complex(n);
    if (c.tile_count() != expected || euler_characteristic(c) != 2) {
      o.pass = false;
      o.detail += "level " + std::to_string(n) + " tiles=" + std::to_string(c.tile_count()) + "; ";
    }
  }
  if (o.pass) o.detail = "level 8 tiles=" + std::to_string(t.complex(8).tile_count()) + ", chi=2 at every level";
  return o;
}

Outcome classifier_vs_oracle() {
  int total = 0, agree = 0;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      for (int c = -5; c <= 5; ++c)
        for (int d = -5; d <= 5; ++d) {
          const IntMatrix2 m{a, b, c, d};
          const auto det = std::llabs(m.det());
          if (det < 2 || det > 50) continue;
          ++total;
          if (classify(m).kind == oracle::classify_by_roots(m)) ++agree;
        }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " matrices agree"};
}

Outcome normal_form_certificates() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> entry(-4, 4), dd(2, 9);
  int ok = 0, total = 0;
  while (total < 500) {
    IntMatrix2 v{entry(rng), entry(rng), entry(rng), entry(rng)};
    if (std::llabs(v.det()) != 1) continue;
    // Compose with a second unimodular factor for larger entries.
    const IntMatrix2 w{1, entry(rng), 0, 1};
    v = v * w;
    const int d = dd(rng);
    const int c = std::uniform_int_distribution<int>(0, d - 2)(rng);
    const IntMatrix2 inv = v.det() == 1 ? v.adj() : -v.adj();
    const IntMatrix2 a = v * IntMatrix2{d, c, 0, 1} * inv;
    ++total;
    try {
      const NormalForm f = normal_form(a);
      const IntMatrix2 target = f.sign > 0 ? f.form() : -f.form();
      if (std::llabs(f.u.det()) == 1 && a * f.u == f.u * target && f.c >= 0 && f.c <= f.d - 2 && f.d == d) ++ok;
    } catch (const Error&) {
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " certified"};
}

bool is_tree(const Complex& c) {
  if (c.edge_count() != c.vertex_count() - 1) return false;
  std::vector<int> parent(c.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const Edge& e : c.edges()) {
    const int a = find(e.from), b = find(e.to);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

Outcome case2_construction() {
  Outcome o;
  int built = 0;
  for (int d = 2; d <= 5; ++d)
    for (int c = 0; c <= d - 2; ++c) {
      const SubdivisionRule r = build_case2_fsr(d, c);
      bool ok = validate_rule(r).ok() && r.base.tile_count() == 1 && degree(r) == d && is_tree(r.base);
      // Forward invariance: each base tree edge is a union of refined edges, so
      // the tree lies in its own preimage.
      if (ok) {
        const RulePatterns p = compile_patterns(r);
        for (int e = 0; e < r.base.edge_count(); ++e) {
          const EdgePattern& ep = p.edges[e];
          if (ep.edges.empty() || r.vertex_carrier[ep.vertices.front()] != CellRef{Dim::Vertex, r.base.edge(e).from} ||
              r.vertex_carrier[ep.vertices.back()] != CellRef{Dim::Vertex, r.base.edge(e).to})
            ok = false;
        }
        SubdivisionTower t(r);
        t.subdivide_to(3);
        for (int n = 0; n <= 3; ++n) ok = ok && euler_characteristic(t.complex(n)) == 2;
      }
      if (!ok) {
        o.pass = false;
        o.detail += "(" + std::to_string(d) + "," + std::to_string(c) + ") failed; ";
      }
      ++built;
    }
  const SubdivisionRule r = build_case2_fsr(2, 0);
  const bool counts = r.base.vertex_count() == 4 && r.base.edge_count() == 3 && r.base.tile_count() == 1 &&
                      r.refined.vertex_count() == 6 && r.refined.edge_count() == 6 && r.refined.tile_count() == 2;
  if (!counts) {
    o.pass = false;
    o.detail += "(2,0) counts differ; ";
  }
  if (o.pass) o.detail = std::to_string(built) + " rules valid; (2,0) base 4/3/1, refined 6/6/2";
  return o;
}

Outcome contraction_certificate() {
  const GrowthCertificate g = growth_certificate({3, 1, 1, 1}, Real(1), 40);
  const Real target = 1 / (2 - boost::multiprecision::sqrt(Real(2)));
  const Real err = boost::multiprecision::abs(g.rows.at(30).ratio - target);
  const bool ok = err < Real("1e-6") && g.actual_dominates && g.lower_bound_monotone && g.rows.size() == 41;
  return {ok, "|ratio(30) - 1/lambda| = " + err.str(3) + ", lower bound dominated for n <= 40: " +
                  (g.actual_dominates ? "yes" : "no")};
}

Outcome slope_oracle() {
  long total = 0, agree = 0;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int c = -4; c <= 4; ++c)
        for (int d = -4; d <= 4; ++d) {
          const IntMatrix2 m{a, b, c, d};
          const auto det = std::llabs(m.det());
          if (det < 2 || det > 9) continue;
          for (int p = -5; p <= 5; ++p)
            for (int q = -5; q <= 5; ++q) {
              if (std::gcd(p, q) != 1) continue;
              ++total;
              const PullbackStep s = pullback_slope(m, SlopeClass::of(p, q));
              const auto o = oracle::slope_components(m, p, q);
              if (s.u == SlopeClass{o.p, o.q} && s.g == o.g && s.m == o.m && s.g * s.m == det) ++agree;
            }
        }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " (A, w) pairs agree"};
}

Outcome nonexpansion() {
  std::vector<SubdivisionRule> rules{builtin("cubic_example"), build_case2_fsr(2, 0), build_case2_fsr(3, 0),
                                     build_case2_fsr(3, 1)};
  long pairs = 0, passed = 0;
  for (const auto& r : rules) {
    SubdivisionTower t(r);
    t.subdivide_to(3);
    for (int n = 0; n <= 2; ++n)
      for (const auto& ch : check_pullback_nonexpansion(t, n)) {
        ++pairs;
        if (ch.pass) ++passed;
      }
  }
  return {passed == pairs, std::to_string(passed) + "/" + std::to_string(pairs) + " tile pairs pass"};
}

Outcome disk_arcs() {
  std::mt19937_64 rng(909);
  int disks = 0, triples = 0, valid = 0;
  for (; disks < 200; ++disks) {
    const DiskComplex d = oracle::random_disk(rng, 50);
    if (!validate_disk(d).ok()) return {false, "generator produced an invalid disk"};
    const int n = d.complex.vertex_count();
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < 10; ++k) {
      const int a = pick(rng), b = pick(rng), v = pick(rng);
      if (a == b || a == v || b == v) continue;
      ++triples;
      try {
        if (is_three_point_arc(d.complex, three_point_arc(d, a, b, v), a, b, v)) ++valid;
      } catch (const Error&) {
      }
    }
  }
  return {valid == triples, std::to_string(valid) + "/" + std::to_string(triples) + " arcs valid on " +
                                std::to_string(disks) + " disks"};
}

Outcome curve_partition() {
  std::vector<SubdivisionRule> rules{builtin("cubic_example"), build_case2_fsr(2, 0), build_case2_fsr(3, 0),
                                     build_case2_fsr(3, 1), build_case2_fsr(4, 1)};
  std::mt19937_64 rng(77);
  int pullbacks = 0, partitioned = 0;
  for (const auto& r : rules) {
    SubdivisionTower t(r);
    t.subdivide_to(1);
    const Complex& c = t.complex(0);
    const int d = degree(r);
    for (int i = 0; i < 200; ++i) {
      const auto w = oracle::random_curve(c, rng, 10);
      if (w.empty()) continue;
      const NormalCurve curve = reduce_curve(c, NormalCurve{0, w, false});
      if (classify_curve(c, curve).kind != CurveClass::EssentialCandidate) continue;
      const CurvePullbackResult pb = pullback_curve(t, curve);
      int sum = 0;
      for (const auto& comp : pb.components) sum += comp.degree;
      ++pullbacks;
      if (sum == d && pb.total == d) ++partitioned;
    }
  }

  // Seam curves of euclid(2,0) against the slope pullback of diag(2,1).
  SubdivisionTower t(build_case2_fsr(2, 0));
  const Complex& c = t.complex(0);
  auto position = [&](const std::string& edge, bool forward) {
    const auto& w = c.tile(0).word;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (c.edge(w[i].edge).id == edge && w[i].forward == forward) return static_cast<int>(i);
    return -1;
  };
  bool seams = true;
  const IntMatrix2 a{2, 0, 0, 1};
  const NormalCurve horizontal{0, {{0, position("gamma", true)}}, true};
  const NormalCurve vertical{0, {{0, position("alpha", true)}, {0, position("beta", true)}}, true};
  for (const auto& [curve, slope] : {std::pair{horizontal, SlopeClass{1, 0}}, std::pair{vertical, SlopeClass{0, 1}}}) {
    validate_curve(c, curve);
    const PullbackStep s = pullback_slope(a, slope);
    const CurvePullbackResult pb = pullback_curve(t, curve);
    seams = seams && static_cast<std::int64_t>(pb.components.size()) == s.g;
    for (const auto& comp : pb.components)
      seams = seams && comp.degree == s.m && curve_key(c, comp.curve.crossings) == curve_key(c, curve.crossings);
  }
  return {partitioned == pullbacks && pullbacks > 0 && seams,
          std::to_string(partitioned) + "/" + std::to_string(pullbacks) +
              " pullbacks partition the degree; euclid(2,0) seams agree with slopes: " + (seams ? "yes" : "no")};
}

Outcome parser_golden() {
  int files = 0, stable = 0;
  for (const auto& entry : std::filesystem::directory_iterator(FSR_DATA_DIR)) {
    if (entry.path().extension() != ".fsr") continue;
    ++files;
    const std::string once = serialize(parse_fsr(read_file(entry.path())));
    if (serialize(parse_fsr(once)) == once) ++stable;
  }
  SubdivisionTower t1(builtin("cubic_example")), t2(builtin("cubic_example"));
  const bool svg = render_svg(t1, {3, {}}) == render_svg(t2, {3, {}});
  const bool golden = serialize(builtin("cubic_example")) == read_file(std::filesystem::path(FSR_DATA_DIR) / "cubic_example.fsr");
  return {files > 0 && stable == files && svg && golden,
          std::to_string(stable) + "/" + std::to_string(files) + " files round-trip; golden match: " +
              (golden ? "yes" : "no") + "; SVG identical: " + (svg ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "cubic rule structure", 1, cubic_structure},
      {2, "growth law 2*3^n and chi = 2", 10, growth_law},
      {3, "Euclidean classifier vs root oracle", 60, classifier_vs_oracle},
      {4, "normal form certificates", 10, normal_form_certificates},
      {5, "case-2 construction", 30, case2_construction},
      {6, "contraction certificate", 1, contraction_certificate},
      {7, "slope pullback oracle", 120, slope_oracle},
      {8, "nonexpansion surrogate", 60, nonexpansion},
      {9, "disk-arc property suite", 30, disk_arcs},
      {10, "curve pullback degree partition", 30, curve_partition},
      {11, "parser round trip and SVG determinism", 10, parser_golden},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " [" << c.name << "] " << o.detail
              << " (" << std::fixed << std::setprecision(3) << seconds << " s, budget " << c.budget << " s"
              << (in_time ? "" : ", over budget") << ")\n";
    std::cout.unsetf(std::ios::fixed);
  }
  return failures == 0 ? 0 : 1;
}
