#include "drsubmax/double_greedy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace drsubmax {

namespace {

long even_inverse(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("double_greedy: epsilon must lie in (0,1)");
  const long m = static_cast<long>(std::ceil(1.0 / epsilon - 1e-12));
  if (m > 100000) throw std::invalid_argument("double_greedy: epsilon too small");
  return 2 * m;  // eps -> 1/(2m)
}

}  // namespace

SegmentPick segment_argmax(const DrFunction& F, const Vec01& base, int u, bool upward,
                           const CoordGrid& grid) {
  const double sign = upward ? 1.0 : -1.0;
  auto probe = [&](long j) {
    Vec01 point = base;
    point.set(u, base[u] + sign * grid.value(j));
    return F.value(point);
  };
  const double at_base = probe(0);

  // Leftmost maximizer = first j where the forward difference turns <= 0.
  auto diff_nonpositive = [&](long j) { return probe(j + 1) - probe(j) <= 0.0; };
  long lo = 0, hi = grid.count - 1;  // search over difference indices
  long found = grid.count;           // all differences positive -> last point
  while (lo <= hi) {
    const long mid = lo + (hi - lo) / 2;
    if (diff_nonpositive(mid)) {
      found = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  SegmentPick pick;
  pick.grid_index = found;
  pick.v = grid.value(found);
  pick.delta = probe(found) - at_base;
  if (pick.delta < 0.0) pick.delta = 0.0;  // guards float noise; provably >= 0
  return pick;
}

DgResult double_greedy(const DrFunction& F, double epsilon, std::span<const int> order) {
  const int n = F.dimension();
  const long inv_eps = even_inverse(epsilon);
  CoordGrid grid{inv_eps * n, inv_eps * n};

  std::vector<int> natural;
  if (order.empty()) {
    natural.resize(static_cast<size_t>(n));
    std::iota(natural.begin(), natural.end(), 0);
    order = natural;
  }
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("double_greedy: order must be a permutation of the ground set");
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int u : order) {
    if (u < 0 || u >= n || seen[static_cast<size_t>(u)])
      throw std::invalid_argument("double_greedy: order must be a permutation of the ground set");
    seen[static_cast<size_t>(u)] = 1;
  }

  const long long evals_before = F.value_calls();
  Vec01 x(n);
  Vec01 y = Vec01::ones(n);
  double fx = F.value(x);
  double fy = F.value(y);

  DgResult result;
  result.epsilon_used = 1.0 / static_cast<double>(inv_eps);
  result.steps.reserve(static_cast<size_t>(n));
  for (int u : order) {
    if (u < 0 || u >= n) throw std::invalid_argument("double_greedy: order entry out of range");
    const SegmentPick up = segment_argmax(F, x, u, /*upward=*/true, grid);
    const SegmentPick down = segment_argmax(F, y, u, /*upward=*/false, grid);
    const double da = up.delta;
    const double db = down.delta;
    // 0/0 convention: full weight on the upper solution's choice 1 - b.
    const double v = da + db > 0.0 ? (da * up.v + db * (1.0 - down.v)) / (da + db) : 1.0 - down.v;
    x.set(u, v);
    y.set(u, v);
    const double fx_new = F.value(x);
    const double fy_new = F.value(y);
    result.steps.push_back(
        {u, up.v, down.v, da, db, v, fx_new - fx, fy_new - fy});
    fx = fx_new;
    fy = fy_new;
  }
  result.x = x;
  result.value = fx;
  result.evals_used = F.value_calls() - evals_before;
  return result;
}

Vec01 box_maximize(const DrFunction& F, const Vec01& x, double epsilon) {
  if (x.dimension() != F.dimension())
    throw std::invalid_argument("box_maximize: dimension mismatch");
  auto base = std::make_shared<Vec01>(x);
  auto inner_fn = std::make_shared<DrFunction>(F);
  DrFunction squeezed(
      F.dimension(),
      [base, inner_fn](const Vec01& a) { return inner_fn->value(hprod(*base, a)); },
      [base, inner_fn](const Vec01& a) {
        RealVec g = inner_fn->gradient(hprod(*base, a));
        for (int u = 0; u < base->dimension(); ++u) g[static_cast<size_t>(u)] *= (*base)[u];
        return g;
      },
      F.smoothness_bound(), F.mode(), "box:" + F.family());
  const DgResult inner_result = double_greedy(squeezed, epsilon);
  return hprod(x, inner_result.x);
}

}  // namespace drsubmax
