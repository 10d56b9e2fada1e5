#pragma once

// Shared generators and helpers for the test suites. Everything is seeded and
// deterministic; the acceptance corpus is built from these.

#include <vector>

#include "drsubmax/dr_function.hpp"
#include "drsubmax/polytope.hpp"
#include "drsubmax/rng.hpp"
#include "drsubmax/set_function.hpp"
#include "drsubmax/vec.hpp"

namespace drsubmax::testsupport {

inline Vec01 random_point(int n, Rng& rng) {
  RealVec c(static_cast<size_t>(n));
  for (double& v : c) v = rng.uniform();
  return Vec01(std::move(c));
}

// A pair x <= y.
inline std::pair<Vec01, Vec01> random_ordered_pair(int n, Rng& rng) {
  RealVec lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u) {
    const double a = rng.uniform(), b = rng.uniform();
    lo[static_cast<size_t>(u)] = std::min(a, b);
    hi[static_cast<size_t>(u)] = std::max(a, b);
  }
  return {Vec01(std::move(lo)), Vec01(std::move(hi))};
}

// Random DR quadratic: entrywise non-positive H, non-negative h, offset
// chosen so the box minimum (a corner) is exactly margin above zero.
inline DrFunction random_dr_quadratic(int n, Rng& rng, double margin = 0.05) {
  std::vector<RealVec> H(static_cast<size_t>(n), RealVec(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = -rng.uniform();
      H[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
      H[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
    }
  RealVec h(static_cast<size_t>(n));
  for (double& v : h) v = rng.uniform();
  // Corner minimum with c = 0, then lift.
  double corner_min = 0.0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    double quad = 0.0, lin = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      lin += h[static_cast<size_t>(i)];
      for (int j = 0; j < n; ++j)
        if (mask >> j & 1u) quad += H[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    corner_min = std::min(corner_min, 0.5 * quad + lin);
  }
  return make_quadratic(H, h, -corner_min + margin);
}

inline SetFunction random_cut(int n, Rng& rng, double density = 0.5, double max_weight = 1.0) {
  std::vector<CutEdge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      if (rng.uniform() < density) edges.push_back({u, v, rng.uniform() * max_weight});
    }
  return make_cut_function(n, std::move(edges));
}

inline SetFunction random_coverage(int n, Rng& rng, double max_weight = 1.0) {
  const int universe = n + static_cast<int>(rng.below(static_cast<uint64_t>(n)));
  CoverageSystem system;
  for (int e = 0; e < universe; ++e) system.element_weights.push_back(rng.uniform() * max_weight);
  system.covers.resize(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int e = 0; e < universe; ++e)
      if (rng.uniform() < 0.4) system.covers[static_cast<size_t>(u)].push_back(e);
  return make_coverage_function(n, std::move(system));
}

// Random packing polytope with a couple of rows; always admits singletons.
inline PackingPolytope random_packing(int n, int rows, Rng& rng) {
  std::vector<RealVec> A;
  RealVec b;
  for (int i = 0; i < rows; ++i) {
    RealVec row(static_cast<size_t>(n));
    double biggest = 0.0;
    for (double& v : row) {
      v = rng.uniform();
      biggest = std::max(biggest, v);
    }
    A.push_back(std::move(row));
    b.push_back(biggest + rng.uniform() * static_cast<double>(n) * 0.5);
  }
  return PackingPolytope(n, std::move(A), std::move(b));
}

// Random feasible point: a uniform box point scaled into the region.
inline Vec01 random_feasible(const PackingPolytope& P, Rng& rng) {
  const int n = P.dimension();
  Vec01 x = random_point(n, rng);
  double shrink = 1.0;
  for (int i = 0; i < P.row_count(); ++i) {
    const double lhs = inner(P.row(i), x);
    if (lhs > P.rhs(i)) shrink = std::min(shrink, P.rhs(i) / lhs);
  }
  return scale(shrink * rng.uniform(), x);
}

// The supermodular product x1*x2 extended to n coordinates: non-negative but
// not DR-submodular (one positive mixed derivative). Built directly because
// make_quadratic rightly refuses positive entries.
inline DrFunction non_dr_product(int n = 2) {
  auto eval = [](const Vec01& x) { return x[0] * x[1]; };
  auto grad = [n](const Vec01& x) {
    RealVec g(static_cast<size_t>(n), 0.0);
    g[0] = x[1];
    g[1] = x[0];
    return g;
  };
  return DrFunction(n, eval, grad, 1.0, DrFunction::Mode::Exact, "non-dr-product");
}

}  // namespace drsubmax::testsupport
