#include <doctest.h>

#include "fsr/euclidean.hpp"
#include "fsr/fatpath.hpp"
#include "oracles.hpp"

using namespace fsr;

TEST_SUITE("fatpath_metric") {
  TEST_CASE("base distances and self distances") {
    const SubdivisionRule r = builtin("cubic_example");
    const Complex& c = r.base;
    const int a = c.tile_index("A"), b = c.tile_index("B");
    CHECK(fat_path_distance(c, MetricPoint::in_tile(a), MetricPoint::in_tile(b)) == 1);
    CHECK(fat_path_distance(c, MetricPoint::in_tile(a), MetricPoint::in_tile(a)) == 0);
    const auto edge = MetricPoint::on_edge(c.edge_index("bot"));
    CHECK(fat_path_distance(c, edge, edge) == 1);
    CHECK(self_distance(c, MetricPoint::in_tile(a)) == 0);
    CHECK(self_distance(c, edge) == 1);
    CHECK(self_distance(c, MetricPoint::at_vertex(c.vertex_index("BL"))) == 1);
  }

  TEST_CASE("fat path length equals distance and consecutive tiles touch") {
    SubdivisionTower t(builtin("cubic_example"));
    t.subdivide_to(2);
    const Complex& c = t.complex(2);
    const auto oracle_d = oracle::tile_distance_matrix(c);
    for (int x = 0; x < c.tile_count(); ++x)
      for (int y = 0; y < c.tile_count(); ++y) {
        const FatPath p = fat_path(c, MetricPoint::in_tile(x), MetricPoint::in_tile(y));
        CHECK(p.length() == oracle_d[x][y]);
        CHECK(fat_path_distance(c, MetricPoint::in_tile(x), MetricPoint::in_tile(y)) == oracle_d[x][y]);
        REQUIRE(!p.tiles.empty());
        CHECK(p.tiles.front() == x);
        CHECK(p.tiles.back() == y);
      }
  }

  TEST_CASE("edge and vertex endpoints use all incident tiles") {
    SubdivisionTower t(build_case2_fsr(3, 1));
    t.subdivide_to(1);
    const Complex& c = t.complex(1);
    const auto oracle_d = oracle::tile_distance_matrix(c);
    for (int e = 0; e < c.edge_count(); ++e)
      for (int y = 0; y < c.tile_count(); ++y) {
        int best = 1 << 20;
        for (int x : incident_tiles(c, {Dim::Edge, e})) best = std::min(best, oracle_d[x][y]);
        CHECK(fat_path_distance(c, MetricPoint::on_edge(e), MetricPoint::in_tile(y)) == best);
      }
  }

  TEST_CASE("length-0 path lifts to its start") {
    SubdivisionTower t(builtin("cubic_example"));
    t.subdivide_to(1);
    int covering = 0;
    for (int x = 0; x < t.complex(1).tile_count(); ++x) {
      if (t.level(1).tile_sigma[x].tile != 0) {
        CHECK_THROWS_AS(lift_tile_path(t, 0, {0}, x), Error);
        continue;
      }
      ++covering;
      CHECK(lift_tile_path(t, 0, {0}, x) == std::vector<int>{x});
    }
    CHECK(covering == 3);
  }

  TEST_CASE("every lift of [A, B] is an edge-adjacent pair over [A, B]") {
    SubdivisionTower t(builtin("cubic_example"));
    t.subdivide_to(1);
    const Level& up = t.level(1);
    const auto d1 = oracle::tile_distance_matrix(up.complex);
    int lifts = 0;
    for (int s = 0; s < up.complex.tile_count(); ++s) {
      if (up.tile_sigma[s].tile != 0) continue;
      const auto lifted = lift_tile_path(t, 0, {0, 1}, s);
      REQUIRE(lifted.size() == 2);
      CHECK(lifted[0] == s);
      CHECK(up.tile_sigma[lifted[1]].tile == 1);
      CHECK(d1[lifted[0]][lifted[1]] == 1);
      ++lifts;
    }
    CHECK(lifts == 3);
  }

  TEST_CASE("non-adjacent path is rejected") {
    SubdivisionTower t(builtin("cubic_example"));
    t.subdivide_to(2);
    const Complex& c = t.complex(1);
    const auto d = oracle::tile_distance_matrix(c);
    int far = -1;
    for (int y = 0; y < c.tile_count(); ++y)
      if (d[0][y] > 1) far = y;
    REQUIRE(far >= 0);
    int start = -1;
    for (int s = 0; s < t.complex(2).tile_count(); ++s)
      if (t.level(2).tile_sigma[s].tile == 0) start = s;
    CHECK_THROWS_AS(lift_tile_path(t, 1, {0, far}, start), Error);
  }

  TEST_CASE("euclid(2,0) lifts across the two subtiles map stepwise onto the path") {
    SubdivisionTower t(build_case2_fsr(2, 0));
    t.subdivide_to(2);
    const Complex& c = t.complex(1);
    for (int a = 0; a < c.tile_count(); ++a)
      for (int b = 0; b < c.tile_count(); ++b) {
        const FatPath p = fat_path(c, MetricPoint::in_tile(a), MetricPoint::in_tile(b));
        for (int s = 0; s < t.complex(2).tile_count(); ++s) {
          if (t.level(2).tile_sigma[s].tile != a) continue;
          const auto lifted = lift_tile_path(t, 1, p.tiles, s);
          REQUIRE(lifted.size() == p.tiles.size());
          for (std::size_t i = 0; i < lifted.size(); ++i) CHECK(t.level(2).tile_sigma[lifted[i]].tile == p.tiles[i]);
        }
      }
  }

  TEST_CASE("nonexpansion on the cubic base and a same-tile pair") {
    SubdivisionTower t(builtin("cubic_example"));
    t.subdivide_to(1);
    const auto all = check_pullback_nonexpansion(t, 0);
    CHECK(all.size() == 3);
    for (const auto& ch : all) CHECK(ch.pass);
    const auto same = check_pullback_nonexpansion(t, 0, {{0, 0}});
    REQUIRE(same.size() == 1);
    CHECK(same[0].k == 0);
    CHECK(same[0].k_lifted == 0);
    CHECK(same[0].pass);
  }

  TEST_CASE("euclid(3,0) nonexpansion for levels up to 2") {
    SubdivisionTower t(build_case2_fsr(3, 0));
    t.subdivide_to(3);
    for (int n = 0; n <= 2; ++n)
      for (const auto& ch : check_pullback_nonexpansion(t, n)) CHECK(ch.pass);
  }
}
