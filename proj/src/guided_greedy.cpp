#include "drsubmax/guided_greedy.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "drsubmax/frank_wolfe.hpp"
#include "drsubmax/simplex.hpp"
#include "drsubmax/tolerances.hpp"

namespace drsubmax {

std::vector<GuessTriple> build_guess_set(double v_lower, double c, double epsilon) {
  if (v_lower <= 0.0) throw std::invalid_argument("build_guess_set: v_lower must be positive");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("build_guess_set: c must lie in (0,1)");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("build_guess_set: epsilon must lie in (0,1)");

  const int opt_count =
      static_cast<int>(std::ceil(std::log(c) / std::log(1.0 - epsilon) - 1e-12)) + 1;
  const long union_top = static_cast<long>(2.0 / (epsilon * (1.0 - epsilon)) + 1.0);
  const long isect_top = static_cast<long>(1.0 / (epsilon * (1.0 - epsilon)) + 1.0);
  const double total = static_cast<double>(opt_count) * static_cast<double>(isect_top + 1) *
                       static_cast<double>(union_top + 1);
  if (total > 5e6)
    throw std::invalid_argument("build_guess_set: epsilon too small, the set would not fit");

  std::vector<GuessTriple> triples;
  triples.reserve(static_cast<size_t>(opt_count) * static_cast<size_t>(isect_top + 1) *
                  static_cast<size_t>(union_top + 1));
  for (int i = 1; i <= opt_count; ++i) {
    const double g = std::pow(1.0 - epsilon, i) * v_lower / c;
    for (long j = 0; j <= isect_top; ++j) {
      const double gi = epsilon * static_cast<double>(j) * g;
      for (long k = 0; k <= union_top; ++k)
        triples.push_back({g, gi, epsilon * static_cast<double>(k) * g});
    }
  }
  return triples;
}

double schedule_value(int i, int switch_step, double delta, double epsilon,
                      const GuessTriple& triple) {
  const int steps = static_cast<int>(std::lround(1.0 / delta));
  if (i < 0 || i >= steps) throw std::invalid_argument("schedule_value: index out of range");
  const double keep = 1.0 - delta;
  if (i < switch_step) {
    return (1.0 - 2.0 * epsilon) * triple.opt_guess - triple.isect_guess -
           (1.0 - std::pow(keep, i)) * triple.union_guess;
  }
  const double lift = std::pow(keep, -switch_step);
  return std::pow(keep, i) *
         ((lift - 4.0 * epsilon) * triple.opt_guess -
          (lift - 1.0 - delta * (i - switch_step)) * triple.union_guess);
}

Vec01 schedule_z(int i, int switch_step, const Vec01& z) {
  if (i < 0) throw std::invalid_argument("schedule_z: negative index");
  return i < switch_step ? z : Vec01(z.dimension());
}

GuidedGreedyResult guided_greedy(const DrFunction& F, const PackingPolytope& P, const Vec01& z,
                                 double switch_time, double epsilon, double delta,
                                 const GuessTriple& triple, std::ostream* trace) {
  const int n = P.dimension();
  if (F.dimension() != n || z.dimension() != n)
    throw std::invalid_argument("guided_greedy: dimension mismatch");
  if (!(switch_time > 0.0 && switch_time < 1.0))
    throw std::invalid_argument("guided_greedy: switch_time must lie in (0,1)");
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("guided_greedy: epsilon must lie in (0,1/2)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("guided_greedy: delta must lie in (0,1)");
  if (!membership(P, {}, z, tol::kMembership))
    throw std::invalid_argument("guided_greedy: z is not feasible");

  const int steps = static_cast<int>(std::ceil(1.0 / std::min(delta, epsilon) - 1e-12));
  if (steps > 100000) throw std::invalid_argument("guided_greedy: delta too small");
  const double d = 1.0 / static_cast<double>(steps);
  const int switch_step = static_cast<int>(std::ceil(switch_time / d - 1e-12));

  GuidedGreedyResult result;
  result.triple = triple;
  result.delta_used = d;
  result.epsilon_used = epsilon;
  result.switch_step = switch_step;
  result.directions.reserve(static_cast<size_t>(steps));
  result.steps.reserve(static_cast<size_t>(steps));

  Vec01 y(n);
  for (int i = 1; i <= steps; ++i) {
    const Vec01 damping = schedule_z(i - 1, switch_step, z);
    const double f_y = F.value(y);
    const RealVec grad = F.gradient(y);

    RealVec room(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
      double g = 1.0 - y[u] - damping[u];
      if (g < -tol::kInvariant)
        throw NumericError("guided_greedy: growth room went negative");
      room[static_cast<size_t>(u)] = g < 0.0 ? 0.0 : g;
    }
    RealVec weights(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u)
      weights[static_cast<size_t>(u)] = room[static_cast<size_t>(u)] * grad[static_cast<size_t>(u)];

    const double threshold = schedule_value(i - 1, switch_step, d, epsilon, triple) - f_y;

    // The cut region is non-empty iff the best weighted point of P clears the
    // threshold; that maximizer doubles as the local search start.
    const LpResult best = lp_maximize(P, {}, weights);
    if (best.status != LpStatus::Optimal) throw NumericError("guided_greedy: LP breakdown");

    GuidedStep record;
    record.value_target = threshold + f_y;
    record.f_y_prev = f_y;
    Vec01 direction(n);
    if (best.objective < threshold - tol::kInvariant) {
      record.q_empty = true;  // direction stays 0, a member of P
    } else {
      const Halfspace cut{weights, threshold};
      const LocalMaxResult local =
          approx_local_max(F, P, std::span<const Halfspace>(&cut, 1), d, best.x);
      direction = local.x_star;
      record.certificate = local.certificate;
      record.cut_slack = inner(weights, direction) - threshold;
    }

    RealVec next(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u)
      next[static_cast<size_t>(u)] = y[u] + d * room[static_cast<size_t>(u)] * direction[u];
    y = Vec01(std::move(next));
    record.y_after = y;
    if (trace != nullptr) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "{\"i\":%d,\"value_target\":%.17g,\"f_y\":%.17g,\"q_empty\":%s,"
                    "\"certificate\":%.17g}",
                    i, record.value_target, f_y, record.q_empty ? "true" : "false",
                    record.certificate);
      *trace << buf << '\n';
    }
    result.directions.push_back(std::move(direction));
    result.steps.push_back(std::move(record));
  }
  result.y_final = y;
  return result;
}

}  // namespace drsubmax
