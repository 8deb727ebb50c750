#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "fsr/disk_arcs.hpp"
#include "oracles.hpp"

using namespace fsr;

namespace {

std::set<std::string> tile_ids(const Complex& c, const std::vector<int>& tiles) {
  std::set<std::string> out;
  for (int t : tiles) out.insert(c.tile(t).id);
  return out;
}

// Every simple edge path from u1 to u2, as vertex sequences.
std::vector<std::vector<int>> all_simple_paths(const Complex& c, int u1, int u2) {
  std::vector<std::vector<int>> adj(c.vertex_count());
  for (const Edge& e : c.edges()) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> path{u1};
  std::vector<bool> on(c.vertex_count(), false);
  on[u1] = true;
  std::function<void(int)> go = [&](int x) {
    if (x == u2) {
      out.push_back(path);
      return;
    }
    for (int y : adj[x])
      if (!on[y]) {
        on[y] = true;
        path.push_back(y);
        go(y);
        path.pop_back();
        on[y] = false;
      }
  };
  go(u1);
  return out;
}

}  // namespace

TEST_SUITE("disk_arcs") {
  TEST_CASE("peelable tiles of a 1x3 strip are its ends") {
    const DiskComplex d = oracle::grid_disk(3, 1);
    CHECK(tile_ids(d.complex, peelable_tiles(d)) == std::set<std::string>{"t0_0", "t2_0"});
  }

  TEST_CASE("every square of a 2x2 grid is peelable") {
    const DiskComplex d = oracle::grid_disk(2, 2);
    CHECK(peelable_tiles(d).size() == 4);
  }

  TEST_CASE("single tile cannot be peeled") {
    CHECK_THROWS_AS(peelable_tiles(oracle::grid_disk(1, 1)), Error);
  }

  TEST_CASE("three corners of a quadrilateral give the boundary path through the middle one") {
    const DiskComplex d = oracle::grid_disk(1, 1);
    const Complex& c = d.complex;
    const int a = c.vertex_index("v0_0"), v = c.vertex_index("v1_0"), b = c.vertex_index("v1_1");
    const EdgePath p = three_point_arc(d, a, b, v);
    CHECK(p.vertices == std::vector<int>{a, v, b});
    CHECK(is_three_point_arc(c, p, a, b, v));
  }

  TEST_CASE("1x2 strip: bottom corners through the top middle") {
    const DiskComplex d = oracle::grid_disk(2, 1);
    const Complex& c = d.complex;
    const int a = c.vertex_index("v0_0"), b = c.vertex_index("v2_0"), v = c.vertex_index("v1_1");
    const EdgePath p = three_point_arc(d, a, b, v);
    CHECK(is_three_point_arc(c, p, a, b, v));
    CHECK(p.simple());
    const auto candidates = all_simple_paths(c, a, b);
    std::vector<std::vector<int>> through;
    for (const auto& q : candidates)
      if (std::find(q.begin(), q.end(), v) != q.end()) through.push_back(q);
    CHECK(std::find(through.begin(), through.end(), p.vertices) != through.end());
  }

  TEST_CASE("equal endpoints are rejected") {
    const DiskComplex d = oracle::grid_disk(2, 2);
    CHECK_THROWS_AS(three_point_arc(d, 0, 0, 1), Error);
  }

  TEST_CASE("all distinct triples on small grids") {
    for (auto [w, h] : {std::pair{2, 2}, std::pair{3, 2}}) {
      const DiskComplex d = oracle::grid_disk(w, h);
      const int n = d.complex.vertex_count();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int v = 0; v < n; ++v) {
            if (a == b || a == v || b == v) continue;
            CHECK(is_three_point_arc(d.complex, three_point_arc(d, a, b, v), a, b, v));
          }
    }
  }

  TEST_CASE("random disks with random triples") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 60; ++i) {
      const DiskComplex d = oracle::random_disk(rng, 40);
      REQUIRE(validate_disk(d).ok());
      std::uniform_int_distribution<int> pick(0, d.complex.vertex_count() - 1);
      for (int k = 0; k < 10; ++k) {
        int a = pick(rng), b = pick(rng), v = pick(rng);
        if (a == b || a == v || b == v) continue;
        const EdgePath p = three_point_arc(d, a, b, v);
        CHECK(is_three_point_arc(d.complex, p, a, b, v));
      }
    }
  }
}
