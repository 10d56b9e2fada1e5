#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "drsubmax/double_greedy.hpp"
#include "drsubmax/oracles.hpp"
#include "support.hpp"

using namespace drsubmax;
using namespace drsubmax::testsupport;

TEST_CASE("segment search: increasing linear coordinate tops out at 1") {
  const DrFunction F = make_quadratic({{0.0}}, {1.0}, 0.0);
  const CoordGrid grid{10, 10};
  const SegmentPick pick = segment_argmax(F, Vec01(1), 0, true, grid);
  CHECK(pick.v == doctest::Approx(1.0));
  CHECK(pick.delta == doctest::Approx(1.0));
}

TEST_CASE("segment search: interior peak of x - x^2 at one half") {
  const DrFunction F = make_quadratic({{-2.0}}, {1.0}, 0.0);
  const CoordGrid grid{10, 10};  // 0.5 lies on the grid
  const SegmentPick pick = segment_argmax(F, Vec01(1), 0, true, grid);
  CHECK(pick.v == doctest::Approx(0.5));
  CHECK(pick.delta == doctest::Approx(0.25));
}

TEST_CASE("segment search matches an exhaustive scan of the grid") {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const DrFunction F = random_dr_quadratic(3, rng);
    const CoordGrid grid{60, 60};
    const bool upward = t % 2 == 0;
    Vec01 base = random_point(3, rng);
    const int u = static_cast<int>(rng.below(3));
    base.set(u, upward ? 0.0 : 1.0);
    const SegmentPick pick = segment_argmax(F, base, u, upward, grid);
    double best = -1e300;
    long best_j = 0;
    for (long j = 0; j <= grid.count; ++j) {
      Vec01 probe = base;
      probe.set(u, upward ? grid.value(j) : 1.0 - grid.value(j));
      const double v = F.value(probe);
      if (v > best + 1e-15) {
        best = v;
        best_j = j;
      }
    }
    CHECK(pick.grid_index == best_j);
    CHECK(pick.delta == doctest::Approx(best - F.value(base)).epsilon(1e-12));
  }
}

TEST_CASE("monotone modular objective drives both solutions to all-ones") {
  const int n = 4;
  std::vector<RealVec> H(n, RealVec(n, 0.0));
  const RealVec w{0.5, 1.0, 0.25, 2.0};
  const DrFunction F = make_quadratic(H, w, 0.0);
  const DgResult r = double_greedy(F, 0.1);
  for (int u = 0; u < n; ++u) CHECK(r.x[u] == doctest::Approx(1.0));
  CHECK(r.value == doctest::Approx(3.75));
}

TEST_CASE("constant objective returns the constant") {
  std::vector<RealVec> H(2, RealVec(2, 0.0));
  const DrFunction F = make_quadratic(H, RealVec(2, 0.0), 0.75);
  CHECK(double_greedy(F, 0.25).value == doctest::Approx(0.75));
}

TEST_CASE("per-step bookkeeping: agreement, gains, and the gain inequality") {
  Rng rng(31);
  for (int t = 0; t < 15; ++t) {
    const DrFunction F =
        t % 2 == 0 ? random_dr_quadratic(4, rng) : multilinear_exact(random_cut(4, rng));
    const DgResult r = double_greedy(F, 0.1);
    REQUIRE(r.steps.size() == 4);
    for (const DgStep& s : r.steps) {
      const double denom = s.delta_a + s.delta_b;
      const double expect_x = denom > 0.0 ? s.delta_a * s.delta_a / denom : 0.0;
      const double expect_y = denom > 0.0 ? s.delta_b * s.delta_b / denom : 0.0;
      CHECK(s.gain_x >= expect_x - 1e-9);
      CHECK(s.gain_y >= expect_y - 1e-9);
      CHECK(s.delta_a >= 0.0);
      CHECK(s.delta_b >= 0.0);
    }
  }
}

TEST_CASE("half-of-optimum guarantee against a dense grid oracle at r = 1") {
  Rng rng(33);
  for (int t = 0; t < 8; ++t) {
    const DrFunction F =
        t % 2 == 0 ? random_dr_quadratic(4, rng) : multilinear_exact(random_coverage(4, rng));
    const DgResult r = double_greedy(F, 0.05);
    const PointOpt box_opt = grid_opt(F, make_hypercube(4), 24);
    const double eps = r.epsilon_used;
    const double f0 = F.value(Vec01(4));
    const double f1 = F.value(Vec01::ones(4));
    // r = 1 of the general lower bound, with the proof's eps constant doubled
    // for float margin.
    const double bound = (0.5 - 2.0 * eps) * box_opt.value + 0.25 * f0 + 0.25 * f1;
    CHECK(r.value >= bound - 1e-9);
    CHECK(r.value >= (0.5 - 2.0 * eps) * box_opt.value - 1e-9);
  }
}

TEST_CASE("evaluation count stays within the logarithmic budget") {
  Rng rng(35);
  for (int n : {2, 4}) {
    const DrFunction F = random_dr_quadratic(n, rng);
    const DgResult r = double_greedy(F, 0.02);
    const double grid_points = static_cast<double>(n) / r.epsilon_used;
    const double budget = 40.0 * n * std::log2(grid_points);
    CHECK(static_cast<double>(r.evals_used) <= budget);
  }
}

TEST_CASE("custom coordinate orders are honored and validated") {
  const int n = 3;
  std::vector<RealVec> H(n, RealVec(n, 0.0));
  const DrFunction F = make_quadratic(H, RealVec{1.0, 1.0, 1.0}, 0.0);
  const std::vector<int> order{2, 0, 1};
  const DgResult r = double_greedy(F, 0.25, order);
  CHECK(r.steps[0].u == 2);
  CHECK(r.steps[1].u == 0);
  const std::vector<int> dup{0, 0, 1};
  CHECK_THROWS_AS(double_greedy(F, 0.25, dup), std::invalid_argument);
}

TEST_CASE("box maximization collapses to the box and reduces to the plain run") {
  Rng rng(39);
  const DrFunction F = random_dr_quadratic(3, rng);
  SUBCASE("zero box returns zero") {
    const Vec01 out = box_maximize(F, Vec01(3), 0.1);
    for (int u = 0; u < 3; ++u) CHECK(out[u] == 0.0);
  }
  SUBCASE("full box equals double_greedy") {
    const Vec01 out = box_maximize(F, Vec01::ones(3), 0.1);
    const DgResult direct = double_greedy(F, 0.1);
    for (int u = 0; u < 3; ++u) CHECK(out[u] == doctest::Approx(direct.x[u]).epsilon(1e-12));
  }
  SUBCASE("random boxes: dominated output, no value loss below F(0)") {
    for (int t = 0; t < 10; ++t) {
      const Vec01 box = random_point(3, rng);
      const Vec01 out = box_maximize(F, box, 0.1);
      CHECK(dominated(out, box, 1e-12));
      CHECK(F.value(out) >= F.value(Vec01(3)) - 1e-9);
    }
  }
}
