#include <doctest.h>

#include <algorithm>

#include "fsr/euclidean.hpp"
#include "fsr/subdivision.hpp"

using namespace fsr;

namespace {

bool has_violation(const ValidationReport& r, const std::string& name) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.invariant == name; });
}

}  // namespace

TEST_SUITE("subdivision_rule") {
  TEST_CASE("cubic example validates with degree 3") {
    const SubdivisionRule r = builtin("cubic_example");
    CHECK(validate_rule(r).ok());
    CHECK(degree(r) == 3);
    CHECK(r.base.vertex_count() == 4);
    CHECK(r.base.edge_count() == 4);
    CHECK(r.base.tile_count() == 2);
  }

  TEST_CASE("cubic example fixes its four base vertices") {
    const SubdivisionRule r = builtin("cubic_example");
    for (int v = 0; v < r.base.vertex_count(); ++v) {
      const int refined = r.refined.vertex_index(r.base.vertex_id(v));
      REQUIRE(refined >= 0);
      CHECK(r.vertex_map[refined] == v);
      CHECK(r.vertex_carrier[refined] == CellRef{Dim::Vertex, v});
      CHECK(r.base.is_marked(v));
    }
  }

  TEST_CASE("retargeting one subtile breaks the constant preimage count") {
    SubdivisionRule r = builtin("cubic_example");
    const int t = r.refined.tile_index("MA");
    r.tile_map[t].tile = 1 - r.tile_map[t].tile;
    const ValidationReport report = validate_rule(r);
    CHECK_FALSE(report.ok());
    CHECK(has_violation(report, "non-constant tile preimage count"));
  }

  TEST_CASE("unmarking a critical value is reported") {
    SubdivisionRule r = builtin("cubic_example");
    r.base.set_marked(0, false);
    CHECK_FALSE(validate_rule(r).ok());
  }

  TEST_CASE("unknown builtin name throws") { CHECK_THROWS_AS(builtin("nope"), Error); }

  TEST_CASE("euclid rules have degree |det|") {
    CHECK(validate_rule(build_case2_fsr(2, 0)).ok());
    CHECK(degree(build_case2_fsr(2, 0)) == 2);
    CHECK(degree(build_case2_fsr(3, 1)) == 3);
  }

  TEST_CASE("zero iterations leave the base unchanged") {
    SubdivisionTower t(builtin("cubic_example"));
    t.subdivide_to(0);
    CHECK(t.depth() == 0);
    CHECK(t.complex(0).tile_count() == 2);
  }

  TEST_CASE("cubic tower tile counts 6 and 54") {
    SubdivisionTower t(builtin("cubic_example"));
    t.subdivide_to(3);
    CHECK(t.complex(1).tile_count() == 6);
    CHECK(t.complex(3).tile_count() == 54);
  }

  TEST_CASE("tile counts follow the per-type subtile counts and every level is a sphere") {
    for (const SubdivisionRule& rule : {builtin("cubic_example"), build_case2_fsr(3, 1), build_case2_fsr(4, 2)}) {
      SubdivisionTower t(rule);
      t.subdivide_to(3);
      std::vector<int> subtiles(rule.base.tile_count(), 0);
      for (int x = 0; x < rule.refined.tile_count(); ++x) ++subtiles[rule.tile_carrier[x].index];
      for (int n = 0; n < 3; ++n) {
        int expected = 0;
        for (int x = 0; x < t.complex(n).tile_count(); ++x) expected += subtiles[t.level(n).tile_type[x].tile];
        CHECK(t.complex(n + 1).tile_count() == expected);
      }
      for (int n = 0; n <= 3; ++n) {
        CHECK(euler_characteristic(t.complex(n)) == 2);
        CHECK(validate_sphere(t.complex(n)).ok());
      }
    }
  }

  TEST_CASE("composed subdivision maps have degree d^n") {
    SubdivisionTower t(builtin("cubic_example"));
    t.subdivide_to(3);
    for (int n = 0; n <= 3; ++n) {
      std::vector<int> count(2, 0);
      for (int x = 0; x < t.complex(n).tile_count(); ++x) ++count[t.tile_image(n, x, 0)];
      const int dn = n == 0 ? 1 : n == 1 ? 3 : n == 2 ? 9 : 27;
      CHECK(count[0] == dn);
      CHECK(count[1] == dn);
    }
  }

  TEST_CASE("lifted tile words map onto their images side by side") {
    SubdivisionTower t(builtin("cubic_example"));
    t.subdivide_to(2);
    for (int n = 1; n <= 2; ++n) {
      const Level& up = t.level(n);
      const Complex& down = t.complex(n - 1);
      for (int x = 0; x < up.complex.tile_count(); ++x) {
        const TileImage s = up.tile_sigma[x];
        const auto& w = up.complex.tile(x).word;
        const auto& img = down.tile(s.tile).word;
        REQUIRE(w.size() == img.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
          const int k = static_cast<int>(w.size());
          const int j = s.reversed ? ((s.offset - static_cast<int>(i)) % k + k) % k : (static_cast<int>(i) + s.offset) % k;
          const EdgeImage e = up.edge_sigma[w[i].edge];
          CHECK(e.edge == img[j].edge);
          CHECK((w[i].forward != e.reversed) == (img[j].forward != s.reversed));
        }
      }
    }
  }
}
