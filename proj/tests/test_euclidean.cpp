#include <doctest.h>

#include <random>

#include "fsr/euclidean.hpp"
#include "oracles.hpp"

using namespace fsr;

TEST_SUITE("euclidean") {
  TEST_CASE("classification examples") {
    CHECK(classify({2, 0, 0, 2}).kind == EuclidCase::Expanding);
    const EuclidClass unit = classify({3, 1, 0, 1});
    CHECK(unit.kind == EuclidCase::UnitEigenvalue);
    CHECK(unit.unit_sign == 1);
    const EuclidClass con = classify({3, 1, 1, 1});
    CHECK(con.kind == EuclidCase::Contracting);
    CHECK(con.trace == 4);
    CHECK(con.det == 2);
    CHECK(con.discriminant == 8);
    CHECK(static_cast<double>(con.lambda()) == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(classify({1, -1, 1, 1}).kind == EuclidCase::Expanding);
    CHECK_THROWS_AS(classify({1, 0, 0, 1}), Error);
  }

  TEST_CASE("classification agrees with the root oracle on a small box") {
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b)
        for (int c = -3; c <= 3; ++c)
          for (int d = -3; d <= 3; ++d) {
            const IntMatrix2 m{a, b, c, d};
            if (std::llabs(m.det()) < 2) continue;
            CHECK(classify(m).kind == oracle::classify_by_roots(m));
          }
  }

  TEST_CASE("matrix text round trip and errors") {
    CHECK(IntMatrix2::parse("3,1,1,1") == IntMatrix2{3, 1, 1, 1});
    CHECK(IntMatrix2::parse(IntMatrix2{-2, 0, 5, 7}.to_string()) == IntMatrix2{-2, 0, 5, 7});
    CHECK_THROWS_AS(IntMatrix2::parse("1,2,3"), Error);
  }

  TEST_CASE("normal form examples") {
    const NormalForm a = normal_form({3, 1, 0, 1});
    CHECK(a.d == 3);
    CHECK(a.c == 1);
    CHECK(a.u == IntMatrix2::identity());
    const NormalForm b = normal_form({1, 0, 2, 3});
    CHECK(b.d == 3);
    CHECK(b.c == 0);
    CHECK(b.u.det() == 1);
    // Independent check of U⁻¹AU = form, as A·U = U·form.
    CHECK(IntMatrix2{1, 0, 2, 3} * b.u == b.u * b.form());
    const NormalForm c = normal_form({2, 1, 0, 1});
    CHECK(c.d == 2);
    CHECK(c.c == 0);
    CHECK(IntMatrix2{2, 1, 0, 1} * c.u == c.u * c.form());
    CHECK_THROWS_AS(normal_form({3, 1, 1, 1}), Error);
  }

  TEST_CASE("normal form of random conjugates") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> small(-3, 3);
    int done = 0;
    while (done < 100) {
      const IntMatrix2 v{small(rng), small(rng), small(rng), small(rng)};
      if (std::llabs(v.det()) != 1) continue;
      const int d = 2 + done % 8, c = done % (d - 1);
      const IntMatrix2 inv = v.det() == 1 ? v.adj() : -v.adj();
      const IntMatrix2 a = v * IntMatrix2{d, c, 0, 1} * inv;
      const NormalForm f = normal_form(a);
      CHECK(f.certifies(a));
      CHECK(std::llabs(f.u.det()) == 1);
      CHECK(a * f.u == f.u * (f.sign > 0 ? f.form() : -f.form()));
      CHECK(f.d == d);
      CHECK(f.c >= 0);
      CHECK(f.c <= f.d - 2);
      ++done;
    }
  }

  TEST_CASE("negative determinant keeps c below |d - 1|") {
    const IntMatrix2 a{-3, 5, 0, 1};
    const NormalForm f = normal_form(a);
    CHECK(f.certifies(a));
    CHECK(f.c >= 0);
    CHECK(f.c < std::llabs(f.d - 1));
  }

  TEST_CASE("eigenbasis condition of diagonal and symmetric matrices is 1") {
    CHECK(static_cast<double>(eigenbasis_condition({2, 0, 0, 3})) == doctest::Approx(1.0));
    CHECK(static_cast<double>(eigenbasis_condition({3, 1, 1, 1})) == doctest::Approx(1.0));
    CHECK(static_cast<double>(eigenbasis_condition({3, 1, 0, 1})) > 1.0);
  }

  TEST_CASE("contraction constant bounds sampled orbits") {
    const ContractionConstant k = contraction_constant({3, 1, 1, 1});
    CHECK(k.verified);
    CHECK(k.worst_ratio <= k.k);
    CHECK(static_cast<double>(k.lambda) == doctest::Approx(2 - std::sqrt(2.0)));
  }

  TEST_CASE("eigenvector orbit scales exactly by the inverse eigenvalue") {
    // v = (1 - √2, 1) satisfies Av = (2 - √2) v for A = [[3,1],[1,1]].
    const Real s = boost::multiprecision::sqrt(Real(2));
    const Real lam = 2 - s;
    Real x = 1 - s, y = 1;
    const Real norm0 = boost::multiprecision::sqrt(x * x + y * y);
    for (int n = 1; n <= 10; ++n) {
      // A⁻¹ = (1/2) [[1,-1],[-1,3]]
      const Real nx = (x - y) / 2, ny = (-x + 3 * y) / 2;
      x = nx;
      y = ny;
      const Real ratio = boost::multiprecision::sqrt(x * x + y * y) / (norm0 * boost::multiprecision::pow(1 / lam, n));
      CHECK(static_cast<double>(ratio) == doctest::Approx(1.0).epsilon(1e-20));
    }
  }

  TEST_CASE("growth certificate for [[3,1],[1,1]]") {
    const GrowthCertificate g = growth_certificate({3, 1, 1, 1}, Real(1), 40);
    CHECK(g.rows.size() == 41);  // n = 0..40
    CHECK(g.lower_bound_monotone);
    CHECK(g.actual_dominates);
    CHECK(g.perturbed_dominates);
    const double target = 1 / (2 - std::sqrt(2.0));
    CHECK(std::fabs(static_cast<double>(g.rows[30].ratio) - target) < 1e-6);
  }

  TEST_CASE("cone points") {
    const auto p = cone_points({2, 0, 0, 1});
    CHECK(p[0] == std::array<std::int64_t, 2>{0, 0});
    CHECK(p[1] == std::array<std::int64_t, 2>{2, 0});
    CHECK(p[2] == std::array<std::int64_t, 2>{0, 1});
    CHECK(p[3] == std::array<std::int64_t, 2>{2, 1});
    const IntMatrix2 a{3, 1, 0, 1};
    const auto q = cone_points(a);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(same_cone_class(a, q[i], q[j]) == (i == j));
    CHECK(same_cone_class(a, {0, 0}, {6, 0}));
    CHECK_THROWS_AS(cone_points({1, 0, 0, 1}), Error);
  }

  TEST_CASE("case-2 construction counts") {
    const SubdivisionRule r = build_case2_fsr(2, 0);
    CHECK(r.base.vertex_count() == 4);
    CHECK(r.base.edge_count() == 3);
    CHECK(r.base.tile_count() == 1);
    CHECK(r.base.word_length(0) == 6);
    CHECK(r.refined.vertex_count() == 6);
    CHECK(r.refined.edge_count() == 6);
    CHECK(r.refined.tile_count() == 2);
    CHECK(degree(r) == 2);
    const SubdivisionRule r3 = build_case2_fsr(3, 0);
    CHECK(degree(r3) == 3);
    CHECK(r3.refined.tile_count() == 3);
    CHECK(r3.base.tile_count() == 1);
    CHECK_THROWS_AS(build_case2_fsr(3, 2), Error);
    CHECK_THROWS_AS(build_case2_fsr(1, 0), Error);
  }
}
