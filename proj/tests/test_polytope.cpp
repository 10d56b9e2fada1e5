#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "drsubmax/polytope.hpp"
#include "drsubmax/simplex.hpp"
#include "support.hpp"

using namespace drsubmax;
using namespace drsubmax::testsupport;

TEST_CASE("zero belongs to every packing polytope") {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const PackingPolytope P = random_packing(4, 3, rng);
    CHECK(membership(P, {}, Vec01(4), 1e-9));
  }
}

TEST_CASE("membership flags violated rows") {
  const PackingPolytope P = make_cardinality(2, 1.0);
  CHECK_FALSE(membership(P, {}, Vec01::ones(2), 1e-9));
  CHECK(membership(P, {}, Vec01{RealVec{0.5, 0.5}}, 1e-9));
}

TEST_CASE("diameter bound is sqrt(n) and dominates sampled feasible pairs") {
  CHECK(diameter_bound(make_hypercube(4)) == doctest::Approx(2.0));
  CHECK(diameter_bound(make_hypercube(1)) == doctest::Approx(1.0));
  Rng rng(2);
  const PackingPolytope P = random_packing(5, 2, rng);
  const double bound = diameter_bound(P);
  for (int t = 0; t < 1000; ++t) {
    const Vec01 x = random_feasible(P, rng);
    const Vec01 y = random_feasible(P, rng);
    CHECK(dist2(x, y) <= bound + 1e-12);
  }
}

TEST_CASE("down-closedness: anything below a feasible point is feasible") {
  Rng rng(3);
  const PackingPolytope P = random_packing(5, 3, rng);
  for (int t = 0; t < 1000; ++t) {
    const Vec01 y = random_feasible(P, rng);
    REQUIRE(membership(P, {}, y, 1e-9));
    RealVec below(5);
    for (int u = 0; u < 5; ++u) below[static_cast<size_t>(u)] = y[u] * rng.uniform();
    CHECK(membership(P, {}, Vec01{RealVec(below)}, 1e-9));
  }
}

TEST_CASE("builders: basic shapes") {
  SUBCASE("knapsack with slack budget admits the all-ones point") {
    const PackingPolytope P = make_knapsack({1.0, 2.0, 0.5}, 3.5);
    CHECK(membership(P, {}, Vec01::ones(3), 1e-9));
  }
  SUBCASE("partition matroid capacities") {
    const PackingPolytope P = make_partition_matroid(3, {{0, 1}, {2}}, {1.0, 1.0});
    CHECK(membership(P, {}, Vec01{RealVec{1.0, 0.0, 1.0}}, 1e-9));
    CHECK_FALSE(membership(P, {}, Vec01{RealVec{1.0, 1.0, 0.0}}, 1e-9));
  }
  SUBCASE("negative parameters are rejected") {
    CHECK_THROWS_AS(make_cardinality(3, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_knapsack({-1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_partition_matroid(2, {{0}, {1}}, {-0.5, 1.0}), std::invalid_argument);
  }
}

TEST_CASE("lp_maximize on the hypercube picks the all-ones point") {
  const PackingPolytope P = make_hypercube(3);
  const LpResult r = lp_maximize(P, {}, {1.0, 1.0, 1.0});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(3.0));
  for (int u = 0; u < 3; ++u) CHECK(r.x[u] == doctest::Approx(1.0));
}

TEST_CASE("lp_maximize under a cardinality row") {
  const PackingPolytope P = make_cardinality(2, 1.0);
  const LpResult r = lp_maximize(P, {}, {2.0, 1.0});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(0.0));
}

TEST_CASE("loose cardinality behaves like the hypercube") {
  Rng rng(4);
  const PackingPolytope loose = make_cardinality(3, 3.0);
  const PackingPolytope box = make_hypercube(3);
  for (int t = 0; t < 20; ++t) {
    RealVec c(3);
    for (double& v : c) v = rng.uniform(-1.0, 1.0);
    const LpResult a = lp_maximize(loose, {}, c);
    const LpResult b = lp_maximize(box, {}, c);
    REQUIRE(a.status == LpStatus::Optimal);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-10));
  }
}

TEST_CASE("lp_maximize agrees with exhaustive vertex enumeration") {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng.below(2));  // 2 or 3
    const int m = 1 + static_cast<int>(rng.below(3));  // 1..3
    const PackingPolytope P = random_packing(n, m, rng);
    std::vector<Halfspace> cuts;
    if (t % 3 == 0) {
      // A satisfiable >= cut through a random feasible point.
      const Vec01 anchor = random_feasible(P, rng);
      RealVec normal(static_cast<size_t>(n));
      for (double& v : normal) v = rng.uniform(-1.0, 1.0);
      cuts.push_back({normal, inner(normal, anchor)});
    }
    RealVec c(static_cast<size_t>(n));
    for (double& v : c) v = rng.uniform(-1.0, 1.0);

    const LpResult lp = lp_maximize(P, cuts, c);
    const auto vertices = enumerate_vertices(P, cuts);
    REQUIRE(lp.status == LpStatus::Optimal);
    REQUIRE(!vertices.empty());
    double best = -1e300;
    for (const Vec01& v : vertices) best = std::max(best, inner(c, v));
    CHECK(lp.objective == doctest::Approx(best).epsilon(1e-7));
    CHECK(membership(P, cuts, lp.x, 1e-7));
  }
}

TEST_CASE("infeasible cut regions are a status, not an error") {
  const PackingPolytope P = make_cardinality(2, 1.0);
  const Halfspace impossible{{1.0, 1.0}, 5.0};
  const LpResult r = lp_maximize(P, std::span<const Halfspace>(&impossible, 1), {1.0, 1.0});
  CHECK(r.status == LpStatus::Infeasible);
}

TEST_CASE("warm-started resolves match cold solves") {
  Rng rng(6);
  const PackingPolytope P = random_packing(4, 2, rng);
  const Vec01 anchor = random_feasible(P, rng);
  RealVec normal{0.3, -0.2, 0.5, 0.1};
  const Halfspace cut{normal, inner(normal, anchor)};
  SimplexState state;
  for (int t = 0; t < 50; ++t) {
    RealVec c(4);
    for (double& v : c) v = rng.uniform(-1.0, 1.0);
    const LpResult warm = lp_maximize(P, std::span<const Halfspace>(&cut, 1), c, &state);
    const LpResult cold = lp_maximize(P, std::span<const Halfspace>(&cut, 1), c);
    REQUIRE(warm.status == LpStatus::Optimal);
    REQUIRE(cold.status == LpStatus::Optimal);
    CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-9));
    CHECK(membership(P, std::span<const Halfspace>(&cut, 1), warm.x, 1e-7));
  }
}

TEST_CASE("vertex CSV export lists the square's corners") {
  std::ostringstream out;
  write_vertices_csv(out, make_hypercube(2));
  const std::string csv = out.str();
  CHECK(csv.find("vertex,x0,x1") == 0);
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 5);  // header + 4 corners
}

TEST_CASE("randomized differential sweep against the vertex oracle at n = 4") {
  Rng rng(7001);
  for (int t = 0; t < 150; ++t) {
    const PackingPolytope P = random_packing(4, 1 + static_cast<int>(rng.below(4)), rng);
    std::vector<Halfspace> cuts;
    if (t % 2 == 0) {
      const Vec01 anchor = random_feasible(P, rng);
      RealVec normal(4);
      for (double& v : normal) v = rng.uniform(-1.0, 1.0);
      cuts.push_back({normal, inner(normal, anchor) - 0.01});
    }
    RealVec c(4);
    for (double& v : c) v = rng.uniform(-2.0, 2.0);
    const LpResult lp = lp_maximize(P, cuts, c);
    REQUIRE(lp.status == LpStatus::Optimal);
    CHECK(membership(P, cuts, lp.x, 1e-7));
    const auto vertices = enumerate_vertices(P, cuts);
    REQUIRE(!vertices.empty());
    double best = -1e300;
    for (const Vec01& v : vertices) best = std::max(best, inner(c, v));
    CHECK(lp.objective == doctest::Approx(best).epsilon(1e-7));
  }
}

TEST_CASE("warm states from another region are ignored, not misused") {
  Rng rng(7101);
  const PackingPolytope A = random_packing(3, 2, rng);
  const PackingPolytope B = random_packing(3, 3, rng);
  SimplexState state;
  RealVec c{1.0, -0.5, 0.25};
  (void)lp_maximize(A, {}, c, &state);       // state now fits A
  const LpResult warm = lp_maximize(B, {}, c, &state);  // must fall back to cold
  const LpResult cold = lp_maximize(B, {}, c);
  REQUIRE(warm.status == LpStatus::Optimal);
  CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-10));
  CHECK(membership(B, {}, warm.x, 1e-7));
}
