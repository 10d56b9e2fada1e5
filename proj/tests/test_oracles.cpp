#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "drsubmax/oracles.hpp"
#include "support.hpp"

using namespace drsubmax;
using namespace drsubmax::testsupport;

TEST_CASE("set optimum of a single edge is the source endpoint") {
  const SetFunction f = make_cut_function(2, {{0, 1, 1.0}});
  const SetOpt opt = brute_force_set_opt(f, make_hypercube(2));
  CHECK(opt.mask == 1u);
  CHECK(opt.value == doctest::Approx(1.0));
}

TEST_CASE("constant set functions maximize anywhere, including empty") {
  const SetFunction f(3, "table", [](uint32_t) { return 2.0; });
  const SetOpt opt = brute_force_set_opt(f, make_hypercube(3));
  CHECK(opt.value == doctest::Approx(2.0));
}

TEST_CASE("grid at resolution 1 equals the corner enumeration") {
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    const DrFunction F = random_dr_quadratic(4, rng);
    const PackingPolytope P = t % 2 == 0 ? make_hypercube(4) : random_packing(4, 2, rng);
    const PointOpt corner = brute_force_corner_opt(F, P);
    const PointOpt grid = grid_opt(F, P, 1);
    CHECK(grid.value == doctest::Approx(corner.value).epsilon(1e-12));
  }
}

TEST_CASE("grid optimum is monotone in the resolution on nested grids") {
  Rng rng(73);
  const DrFunction F = random_dr_quadratic(3, rng);
  const PackingPolytope P = make_hypercube(3);
  double last = -1e300;
  for (int m : {1, 2, 4, 8, 16}) {
    const double v = grid_opt(F, P, m).value;
    CHECK(v >= last - 1e-12);
    last = v;
  }
}

TEST_CASE("one-dimensional grid scan finds the boundary maximum") {
  const DrFunction F = make_quadratic({{-1.0}}, {1.0}, 0.0);  // x - x^2/2
  const PointOpt opt = grid_opt(F, make_hypercube(1), 10);
  CHECK(opt.x[0] == doctest::Approx(1.0));
  CHECK(opt.value == doctest::Approx(0.5));
}

TEST_CASE("grid refuses absurd workloads") {
  Rng rng(74);
  const DrFunction F = random_dr_quadratic(8, rng);
  CHECK_THROWS_AS(grid_opt(F, make_hypercube(8), 100), std::invalid_argument);
}

TEST_CASE("basic expansion: single direction reduces to the mixing bound") {
  const SetFunction f = make_cut_function(2, {{0, 1, 1.0}});
  const DrFunction F = multilinear_exact(f);
  const Vec01 x{RealVec{1.0, 0.0}};
  const double p = 0.5;
  const BoundCheck check = verify_basic_bound(F, std::span<const Vec01>(&x, 1),
                                              std::span<const double>(&p, 1));
  CHECK(check.lhs == doctest::Approx(0.5));
  CHECK(check.rhs == doctest::Approx(0.5));
  CHECK(check.holds);
}

TEST_CASE("basic expansion: degenerate probability vectors") {
  Rng rng(75);
  const DrFunction F = random_dr_quadratic(3, rng);
  std::vector<Vec01> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(random_point(3, rng));
  SUBCASE("all ones leaves a single term") {
    const std::vector<double> ps(3, 1.0);
    const BoundCheck check = verify_basic_bound(F, xs, ps);
    CHECK(check.lhs == doctest::Approx(check.rhs).epsilon(1e-12));
    CHECK(check.holds);
  }
  SUBCASE("all zeros compares F(0) with itself") {
    const std::vector<double> ps(3, 0.0);
    const BoundCheck check = verify_basic_bound(F, xs, ps);
    CHECK(check.lhs == doctest::Approx(F.value(Vec01(3))).epsilon(1e-12));
    CHECK(check.lhs == doctest::Approx(check.rhs).epsilon(1e-12));
  }
}

TEST_CASE("expansion bounds hold on random DR instances") {
  Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const DrFunction F = t % 2 == 0 ? random_dr_quadratic(n, rng)
                                    : multilinear_exact(random_cut(n, rng));
    const int r = 1 + static_cast<int>(rng.below(3));
    std::vector<Vec01> xs;
    std::vector<double> ps;
    for (int i = 0; i < r; ++i) {
      xs.push_back(random_point(n, rng));
      ps.push_back(rng.uniform());
    }
    CHECK(verify_basic_bound(F, xs, ps).holds);
  }
}

TEST_CASE("block expansion reduces to the basic bound at one full block") {
  Rng rng(79);
  const DrFunction F = random_dr_quadratic(3, rng);
  std::vector<Vec01> xs;
  std::vector<double> ps;
  for (int i = 0; i < 3; ++i) {
    xs.push_back(random_point(3, rng));
    ps.push_back(rng.uniform());
  }
  const std::vector<Vec01> blocks{Vec01::ones(3)};
  const std::vector<std::vector<Vec01>> lists{xs};
  const BoundCheck basic = verify_basic_bound(F, xs, ps);
  const BoundCheck general = verify_general_bound(F, blocks, lists, ps);
  CHECK(general.lhs == doctest::Approx(basic.lhs).epsilon(1e-12));
  CHECK(general.rhs == doctest::Approx(basic.rhs).epsilon(1e-12));
}

TEST_CASE("block expansion: a zero second block changes nothing") {
  Rng rng(81);
  const DrFunction F = random_dr_quadratic(3, rng);
  std::vector<Vec01> xs;
  std::vector<double> ps;
  for (int i = 0; i < 2; ++i) {
    xs.push_back(random_point(3, rng));
    ps.push_back(rng.uniform());
  }
  const std::vector<Vec01> blocks{Vec01::ones(3), Vec01(3)};
  const std::vector<std::vector<Vec01>> lists{xs, xs};
  const BoundCheck one = verify_basic_bound(F, xs, ps);
  const BoundCheck two = verify_general_bound(F, blocks, lists, ps);
  CHECK(two.lhs == doctest::Approx(one.lhs).epsilon(1e-12));
  CHECK(two.rhs == doctest::Approx(one.rhs).epsilon(1e-12));
}

TEST_CASE("block expansion holds on 200 random two-block instances") {
  Rng rng(83);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(2));
    const DrFunction F = t % 2 == 0 ? random_dr_quadratic(n, rng)
                                    : multilinear_exact(random_coverage(n, rng));
    std::vector<Vec01> blocks;
    {
      RealVec b1(static_cast<size_t>(n));
      RealVec b2(static_cast<size_t>(n));
      for (int u = 0; u < n; ++u) {
        b1[static_cast<size_t>(u)] = rng.uniform();
        b2[static_cast<size_t>(u)] = 1.0 - b1[static_cast<size_t>(u)];
      }
      blocks.push_back(Vec01{std::move(b1)});
      blocks.push_back(Vec01{std::move(b2)});
    }
    std::vector<std::vector<Vec01>> lists(2);
    std::vector<double> ps;
    for (int j = 0; j < 3; ++j) {
      lists[0].push_back(random_point(n, rng));
      lists[1].push_back(random_point(n, rng));
      ps.push_back(rng.uniform());
    }
    CHECK(verify_general_bound(F, blocks, lists, ps).holds);
  }
}

TEST_CASE("blocks that fail to partition the ones vector are rejected") {
  Rng rng(84);
  const DrFunction F = random_dr_quadratic(2, rng);
  const std::vector<Vec01> blocks{Vec01::ones(2), Vec01::ones(2)};
  const std::vector<std::vector<Vec01>> lists{{random_point(2, rng)}, {random_point(2, rng)}};
  const std::vector<double> ps{0.5};
  CHECK_THROWS_AS(verify_general_bound(F, blocks, lists, ps), std::invalid_argument);
}

TEST_CASE("the non-DR product violates the basic bound and shrinks toward corners") {
  const DrFunction F = non_dr_product();
  Rng rng(85);
  int violations = 0;
  BoundCheck witness;
  for (int t = 0; t < 1000 && violations == 0; ++t) {
    std::vector<Vec01> xs{random_point(2, rng)};
    std::vector<double> ps{rng.uniform()};
    const BoundCheck check = verify_basic_bound(F, xs, ps);
    if (!check.holds) {
      ++violations;
      witness = check;
    }
  }
  REQUIRE(violations >= 1);
  REQUIRE(!witness.shrunk_p.empty());
  CHECK(witness.shrunk_lhs < witness.shrunk_rhs - 1e-9);
  // The shrinker pushes the probability to an integral or near-integral value.
  const double p = witness.shrunk_p[0];
  CHECK(std::min(p, 1.0 - p) <= 0.26);
}

TEST_CASE("smoothness oracle: linear functions have zero curvature") {
  std::vector<RealVec> H(3, RealVec(3, 0.0));
  const DrFunction F = make_quadratic(H, RealVec{1.0, 2.0, 3.0}, 0.0);
  CHECK(smoothness_oracle(F, 200, 7) == doctest::Approx(0.0));
}

TEST_CASE("declared smoothness bounds dominate the sampled witness") {
  Rng rng(87);
  for (int t = 0; t < 6; ++t) {
    const DrFunction Q = random_dr_quadratic(4, rng);
    CHECK(smoothness_oracle(Q, 300, 1000 + static_cast<uint64_t>(t)) <=
          Q.smoothness_bound() + 1e-9);
    const SetFunction f = random_cut(4, rng);
    const DrFunction M = multilinear_exact(f);
    const double witness = smoothness_oracle(M, 300, 2000 + static_cast<uint64_t>(t));
    CHECK(witness <= M.smoothness_bound() + 1e-9);
    CHECK(M.smoothness_bound() == doctest::Approx(2.0 * 4 * f.value_bound()));
  }
}

TEST_CASE("single-edge cut: value bound and its smoothness consequences") {
  const SetFunction f = make_cut_function(2, {{0, 1, 1.0}});
  CHECK(f.value_bound() == doctest::Approx(2.0));  // n * max singleton
  CHECK(marginal_bound_check(f));
  const DrFunction F = multilinear_exact(f);
  CHECK(smoothness_oracle(F, 500, 11) <= 2.0 * 2 * 2.0 + 1e-9);
}

TEST_CASE("oracle bundles collect consistent pieces") {
  Rng rng(89);
  const DrFunction F = random_dr_quadratic(3, rng);
  const PackingPolytope P = make_cardinality(3, 2.0);
  const Vec01 z = random_feasible(P, rng);
  const OracleBundle bundle = make_oracle_bundle(F, P, 12, z);
  CHECK(bundle.grid.value >= bundle.corner.value - 1e-12);
  CHECK(bundle.f_union == doctest::Approx(F.value(psum(z, bundle.grid.x))));
  CHECK(bundle.f_isect == doctest::Approx(F.value(hprod(z, bundle.grid.x))));
}
