#include "drsubmax/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "drsubmax/double_greedy.hpp"
#include "drsubmax/frank_wolfe.hpp"
#include "drsubmax/simplex.hpp"
#include "drsubmax/tolerances.hpp"

namespace drsubmax {

namespace {

constexpr double kAlpha = 0.1974;
constexpr double kMixR = 2.22;
constexpr double kSwitchTime = 0.3682;

double even_inv(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("solve: epsilon must lie in (0,1/2)");
  const long m = static_cast<long>(std::ceil(1.0 / epsilon - 1e-12));
  return 1.0 / (2.0 * static_cast<double>(m));
}

double int_inv(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("solve: delta must lie in (0,1)");
  return 1.0 / std::ceil(1.0 / delta - 1e-12);
}

struct Context {
  const DrFunction& F;
  const PackingPolytope& P;
  double switch_time;
  double eps;
  double delta;
  int depth;
  int children_cap;
  std::vector<GuessTriple> triples;
  bool record;
  SolveReport& report;
  std::unordered_set<uint64_t> seen;

  void offer(const std::string& origin, const std::vector<int>& path, int triple_index,
             const Vec01& x) {
    const uint64_t key = coordinate_hash(x);
    if (!seen.insert(key).second) return;
    const double value = F.value(x);
    if (record) report.candidates.push_back({origin, path, triple_index, value, x});
    if (report.best_origin.empty() || value > report.best_value) {
      report.best_value = value;
      report.best_x = x;
      report.best_origin = origin;
      report.best_path = path;
    }
  }
};

// Damage-direction heuristic: steps after the switch whose cut was tightest,
// and everything before a step whose cut region came up empty.
struct ChildPick {
  int priority;
  double slack;
  int triple_index;
  int step;
  Vec01 direction;
};

void recurse(Context& ctx, const Vec01& z, int level, std::vector<int>& path) {
  ++ctx.report.node_count;
  NodeRecord node;
  node.path = path;
  node.z = z;

  ctx.offer("box", path, -1, box_maximize(ctx.F, z, ctx.eps));

  std::vector<ChildPick> picks;
  for (size_t ti = 0; ti < ctx.triples.size(); ++ti) {
    const GuidedGreedyResult run = guided_greedy(ctx.F, ctx.P, z, ctx.switch_time, ctx.eps,
                                                 ctx.delta, ctx.triples[ti]);
    ++node.guided_runs;
    ctx.offer("guided", path, static_cast<int>(ti), run.y_final);

    int first_empty = -1;
    for (size_t s = 0; s < run.steps.size(); ++s) {
      if (run.steps[s].q_empty) {
        ++node.q_empty_steps;
        if (first_empty < 0) first_empty = static_cast<int>(s) + 1;
      }
    }
    if (level >= ctx.depth) continue;
    for (size_t s = 0; s < run.steps.size(); ++s) {
      const int step = static_cast<int>(s) + 1;
      if (step <= run.switch_step || run.steps[s].q_empty) continue;
      const int priority = (first_empty >= 0 && step < first_empty) ? 0 : 1;
      picks.push_back({priority, run.steps[s].cut_slack, static_cast<int>(ti), step,
                       run.directions[s]});
    }
  }
  ctx.report.nodes.push_back(std::move(node));

  if (level >= ctx.depth || picks.empty()) return;
  std::stable_sort(picks.begin(), picks.end(), [](const ChildPick& a, const ChildPick& b) {
    if (a.priority != b.priority) return a.priority < b.priority;
    if (a.slack != b.slack) return a.slack < b.slack;
    if (a.triple_index != b.triple_index) return a.triple_index < b.triple_index;
    return a.step < b.step;
  });
  std::unordered_set<uint64_t> child_seen;
  int taken = 0;
  for (const ChildPick& pick : picks) {
    if (ctx.children_cap > 0 && taken >= ctx.children_cap) break;
    if (!child_seen.insert(coordinate_hash(pick.direction)).second) continue;
    path.push_back(taken);
    recurse(ctx, pick.direction, level + 1, path);
    path.pop_back();
    ++taken;
  }
}

std::vector<GuessTriple> select_triples(std::vector<GuessTriple> all, int budget) {
  if (budget <= 0 || static_cast<int>(all.size()) <= budget) return all;
  std::vector<GuessTriple> picked;
  picked.reserve(static_cast<size_t>(budget));
  const size_t last = all.size() - 1;
  size_t prev = SIZE_MAX;
  for (int k = 0; k < budget; ++k) {
    const size_t idx = budget == 1 ? 0 : last * static_cast<size_t>(k) / static_cast<size_t>(budget - 1);
    if (idx == prev) continue;
    picked.push_back(all[idx]);
    prev = idx;
  }
  return picked;
}

}  // namespace

Vec01 measured_greedy(const DrFunction& F, const PackingPolytope& P, double delta) {
  if (F.dimension() != P.dimension())
    throw std::invalid_argument("measured_greedy: dimension mismatch");
  const double d = int_inv(delta);
  const int steps = static_cast<int>(std::lround(1.0 / d));
  const int n = P.dimension();
  SimplexState lp_state;
  Vec01 y(n);
  RealVec weights(static_cast<size_t>(n));
  for (int i = 0; i < steps; ++i) {
    const RealVec grad = F.gradient(y);
    for (int u = 0; u < n; ++u)
      weights[static_cast<size_t>(u)] = (1.0 - y[u]) * grad[static_cast<size_t>(u)];
    const LpResult dir = lp_maximize(P, {}, weights, &lp_state);
    if (dir.status != LpStatus::Optimal) throw NumericError("measured_greedy: LP breakdown");
    RealVec next(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) next[static_cast<size_t>(u)] = y[u] + d * (1.0 - y[u]) * dir.x[u];
    y = Vec01(std::move(next));
  }
  return y;
}

namespace {

// Normalizes the parameters into the report and fills the shared run context.
// v_lower_hint, when non-negative, replaces the baseline bound computation.
Context make_context(const DrFunction& F, const PackingPolytope& P, const SolveParams& params,
                     SolveReport& report, double v_lower_hint) {
  const double eps = even_inv(params.epsilon);
  const double delta = int_inv(std::min(params.delta, eps));
  if (!(params.switch_time > 0.0 && params.switch_time < 1.0))
    throw std::invalid_argument("solve: switch time must lie in (0,1)");
  const int depth = params.exhaustive_mode ? 1 + static_cast<int>(std::ceil(2.0 / eps))
                                           : std::max(1, params.max_depth);
  report.epsilon_used = eps;
  report.delta_used = delta;
  report.switch_time = params.switch_time;
  report.depth_used = depth;
  report.seed = params.seed;

  Context ctx{F,
              P,
              params.switch_time,
              eps,
              delta,
              depth,
              params.exhaustive_mode ? 0 : params.children_per_node,
              {},
              params.record_candidates,
              report,
              {}};

  double v_lower, c;
  if (params.guess_mode == GuessMode::Oracle) {
    v_lower = params.oracle_v_lower;
    c = std::isnan(params.guess_c) ? 1.0 - eps : params.guess_c;
  } else {
    if (v_lower_hint >= 0.0) {
      v_lower = v_lower_hint;
    } else {
      const Vec01 base = measured_greedy(F, P, delta);
      v_lower = std::max(F.value(base), F.value(box_maximize(F, base, eps)));
    }
    c = std::isnan(params.guess_c) ? 1.0 / std::numbers::e - 0.02 : params.guess_c;
  }
  report.v_lower = v_lower;
  report.guess_c = c;
  if (v_lower <= 1e-15) {
    // F vanishes on every candidate we can produce; a single zero triple
    // keeps the run well-defined.
    ctx.triples = {GuessTriple{0.0, 0.0, 0.0}};
  } else {
    ctx.triples = select_triples(build_guess_set(v_lower, c, eps),
                                 params.exhaustive_mode ? 0 : params.triples_per_node);
  }
  report.triples_used = static_cast<int>(ctx.triples.size());
  return ctx;
}

}  // namespace

SolveReport solve(const DrFunction& F, const PackingPolytope& P, const SolveParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const long long v0 = F.value_calls();
  const long long g0 = F.gradient_calls();

  SolveReport report;
  const double eps = even_inv(params.epsilon);
  const double delta = int_inv(std::min(params.delta, eps));

  const Vec01 z0 = approx_local_max(F, P, {}, std::min(eps, delta)).x_star;
  const Vec01 baseline = measured_greedy(F, P, delta);
  const double v_lower_hint =
      params.guess_mode == GuessMode::Oracle
          ? -1.0
          : std::max(F.value(baseline), F.value(box_maximize(F, z0, eps)));

  Context ctx = make_context(F, P, params, report, v_lower_hint);
  ctx.offer("z0", {}, -1, z0);
  ctx.offer("baseline", {}, -1, baseline);

  std::vector<int> path;
  recurse(ctx, z0, 1, path);

  report.value_evals = F.value_calls() - v0;
  report.gradient_evals = F.gradient_calls() - g0;
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                       .count();
  return report;
}

Vec01 solve_recursive(const DrFunction& F, const PackingPolytope& P, const SolveParams& params,
                      const Vec01& z, int level, SolveReport* report) {
  SolveReport local;
  Context ctx = make_context(F, P, params, local, -1.0);
  std::vector<int> path;
  recurse(ctx, z, level, path);
  const Vec01 best = local.best_x;
  if (report != nullptr) *report = std::move(local);
  return best;
}

ConstantsReport verify_constants() {
  ConstantsReport r;
  r.alpha = kAlpha;
  r.r = kMixR;
  r.switch_time = kSwitchTime;
  const double e = std::numbers::e;
  const double et = std::exp(kSwitchTime);
  const double rr = kMixR;
  const double denom = 2.0 * (rr + 1.0) * (rr + 1.0);

  r.coef_opt = (1.0 - kAlpha) * ((2.0 - kSwitchTime) * et - 1.0) / e;
  r.coef_isect = kAlpha * (4.0 * rr + rr * rr) / denom - (1.0 - kAlpha) * (et - 1.0) / e;
  r.coef_union = kAlpha * rr * rr / denom -
                 (1.0 - kAlpha) *
                     ((2.0 - kSwitchTime) * et + kSwitchTime -
                      (kSwitchTime * kSwitchTime + 5.0) / 2.0) /
                     e;
  r.coef_opt_in_range = r.coef_opt >= 0.401 && r.coef_opt <= 0.4013;
  r.drop_terms_nonneg = r.coef_isect >= -1e-4 && r.coef_union >= -1e-4;
  r.pass = r.coef_opt_in_range && r.drop_terms_nonneg;
  return r;
}

}  // namespace drsubmax
