#include "drsubmax/frank_wolfe.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "drsubmax/simplex.hpp"
#include "drsubmax/tolerances.hpp"

namespace drsubmax {

namespace {

int normalized_inverse(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("approx_local_max: delta must lie in (0,1)");
  const int k = static_cast<int>(std::ceil(1.0 / delta - 1e-12));
  if (k > 1000)
    throw std::invalid_argument("approx_local_max: delta too small (would need > 1e6 iterations)");
  return k;
}

}  // namespace

LocalMaxResult approx_local_max(const DrFunction& F, const PackingPolytope& P,
                                std::span<const Halfspace> cuts, double delta,
                                const std::optional<Vec01>& start, std::vector<Vec01>* iterates,
                                std::ostream* trace) {
  if (F.dimension() != P.dimension())
    throw std::invalid_argument("approx_local_max: dimension mismatch");
  const int k = normalized_inverse(delta);
  const double step = 1.0 / static_cast<double>(k);
  const int iterations = k * k;
  const int n = P.dimension();

  SimplexState lp_state;
  Vec01 x;
  if (start.has_value()) {
    if (!membership(P, cuts, *start, tol::kMembership))
      throw std::invalid_argument("approx_local_max: supplied start is infeasible");
    x = *start;
  } else if (cuts.empty()) {
    x = Vec01(n);  // 0 is feasible in any down-closed region
  } else {
    // One feasibility solve doubles as the start point.
    const LpResult feas = lp_maximize(P, cuts, RealVec(static_cast<size_t>(n), 0.0), &lp_state);
    if (feas.status == LpStatus::Infeasible)
      throw std::invalid_argument("approx_local_max: region is empty");
    if (feas.status != LpStatus::Optimal) throw NumericError("approx_local_max: LP breakdown");
    x = feas.x;
  }
  if (iterates != nullptr) iterates->push_back(x);

  LocalMaxResult result;
  result.iterations_run = iterations;
  result.gap_trace.reserve(static_cast<size_t>(iterations));
  double best_gap = std::numeric_limits<double>::infinity();

  for (int i = 1; i <= iterations; ++i) {
    const RealVec grad = F.gradient(x);
    const LpResult dir = lp_maximize(P, cuts, grad, &lp_state);
    if (dir.status != LpStatus::Optimal) throw NumericError("approx_local_max: LP breakdown");
    const double gap = dir.objective - inner(grad, x);
    result.gap_trace.push_back(gap);
    if (gap < best_gap) {
      best_gap = gap;
      result.i_star = i;
      result.x_star = x;  // x(i* - 1)
    }
    RealVec next(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) next[static_cast<size_t>(u)] = (1.0 - step) * x[u] + step * dir.x[u];
    x = Vec01(std::move(next));
    if (iterates != nullptr) iterates->push_back(x);
    if (trace != nullptr) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "{\"iteration\":%d,\"objective\":%.17g,\"certificate\":%.17g}",
                    i, F.value(x), best_gap);
      *trace << buf << '\n';
    }
  }
  result.certificate = best_gap;
  return result;
}

}  // namespace drsubmax
