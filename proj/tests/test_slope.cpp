#include <doctest.h>

#include <numeric>

#include "fsr/slope.hpp"
#include "oracles.hpp"

using namespace fsr;

namespace {

void check_step(const IntMatrix2& a, SlopeClass w, SlopeClass u, std::int64_t g, std::int64_t m) {
  const PullbackStep s = pullback_slope(a, w);
  CHECK(s.u == u);
  CHECK(s.g == g);
  CHECK(s.m == m);
  const auto o = oracle::slope_components(a, w.p, w.q);
  CHECK(o.p == u.p);
  CHECK(o.q == u.q);
  CHECK(o.g == g);
  CHECK(o.m == m);
}

}  // namespace

TEST_SUITE("slope_dynamics") {
  TEST_CASE("slope classes are primitive with a positive leading coordinate") {
    CHECK(SlopeClass::of(-4, 6) == SlopeClass{2, -3});
    CHECK(SlopeClass::of(0, -5) == SlopeClass{0, 1});
    CHECK(SlopeClass::parse("3,-9") == SlopeClass{1, -3});
    CHECK_THROWS_AS(SlopeClass::of(0, 0), Error);
    CHECK_THROWS_AS(SlopeClass::parse("1;2"), Error);
  }

  TEST_CASE("pullback examples") {
    check_step({2, 0, 0, 1}, {0, 1}, {0, 1}, 2, 1);
    check_step({2, 0, 0, 2}, {1, 0}, {1, 0}, 2, 2);
    for (int d = 2; d <= 6; ++d) check_step({d, 0, 0, 1}, {1, 0}, {1, 0}, 1, d);
    check_step({3, 1, 1, 1}, {1, 1}, {0, 1}, 2, 1);
  }

  TEST_CASE("pullback agrees with the component oracle on a small box") {
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c)
          for (int d = -2; d <= 2; ++d) {
            const IntMatrix2 m{a, b, c, d};
            if (std::llabs(m.det()) < 2) continue;
            for (int p = 0; p <= 3; ++p)
              for (int q = -3; q <= 3; ++q) {
                if (std::gcd(p, q) != 1 || (p == 0 && q != 1)) continue;
                const PullbackStep s = pullback_slope(m, SlopeClass::of(p, q));
                const auto o = oracle::slope_components(m, p, q);
                CHECK(s.u == SlopeClass{o.p, o.q});
                CHECK(s.g == o.g);
                CHECK(s.m == o.m);
                CHECK(s.g * s.m == std::llabs(m.det()));
              }
          }
  }

  TEST_CASE("fixed vertical slope cycles with period 1") {
    const OrbitReport r = pullback_orbit({2, 0, 0, 1}, {0, 1}, 10);
    CHECK(r.cycle);
    CHECK(r.period == 1);
    CHECK(r.preperiod == 0);
    CHECK_FALSE(r.univalent_prefix.has_value());
  }

  TEST_CASE("[[3,1],[1,1]] from (1,0) does not cycle within 20 steps") {
    const OrbitReport r = pullback_orbit({3, 1, 1, 1}, {1, 0}, 20);
    CHECK_FALSE(r.cycle);
    REQUIRE(r.steps.size() == 20);
    CHECK(r.steps[0].u == SlopeClass{1, -1});
    CHECK(r.steps[1].u == SlopeClass{1, -2});
    CHECK(r.steps[2].u == SlopeClass{3, -7});
    for (std::size_t i = 0; i < r.steps.size(); ++i) CHECK(r.steps[i].m == (i % 2 == 0 ? 2 : 1));
    auto norm2 = [](SlopeClass s) { return s.p * s.p + s.q * s.q; };
    for (std::size_t i = 2; i + 1 < r.steps.size(); ++i) CHECK(norm2(r.steps[i + 1].u) > norm2(r.steps[i].u));
    CHECK(r.univalent_prefix == 0);
    CHECK(r.eigen_angle >= 0);
    CHECK(r.eigen_angle < 1e-6);
  }

  TEST_CASE("zero steps") {
    const OrbitReport r = pullback_orbit({3, 1, 1, 1}, {1, 0}, 0);
    CHECK(r.steps.empty());
    CHECK_FALSE(r.cycle);
  }

  TEST_CASE("wandering verdicts") {
    const auto a = is_wandering_univalent_within({2, 0, 0, 1}, {0, 1}, 10);
    CHECK(a.kind == WanderingVerdict::Cycle);
    CHECK(a.index == 1);
    const auto b = is_wandering_univalent_within({3, 1, 1, 1}, {1, 0}, 10);
    CHECK(b.kind == WanderingVerdict::NonUnivalent);
    CHECK(b.index == 0);
    for (auto w : {SlopeClass{1, 0}, SlopeClass{0, 1}, SlopeClass{2, 3}}) {
      const auto c = is_wandering_univalent_within({2, 0, 0, 2}, w, 1);
      CHECK(c.kind == WanderingVerdict::NonUnivalent);
    }
    CHECK(is_wandering_univalent_within({2, 0, 0, 1}, {0, 1}, 0).kind == WanderingVerdict::YesWithin);
  }
}
