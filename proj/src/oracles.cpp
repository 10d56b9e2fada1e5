#include "drsubmax/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "drsubmax/rng.hpp"
#include "drsubmax/tolerances.hpp"

namespace drsubmax {

SetOpt brute_force_set_opt(const SetFunction& f, const PackingPolytope& P) {
  const int n = f.dimension();
  if (n != P.dimension()) throw std::invalid_argument("brute_force_set_opt: dimension mismatch");
  if (n > 20) throw std::invalid_argument("brute_force_set_opt: n too large (max 20)");
  SetOpt best;
  bool any = false;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!membership(P, {}, Vec01::indicator(n, mask), tol::kInvariant)) continue;
    const double v = f(mask);
    if (!any || v > best.value) {
      best = {mask, v};
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("brute_force_set_opt: no feasible corner (not down-closed?)");
  return best;
}

PointOpt brute_force_corner_opt(const DrFunction& F, const PackingPolytope& P) {
  const int n = F.dimension();
  if (n != P.dimension())
    throw std::invalid_argument("brute_force_corner_opt: dimension mismatch");
  if (n > 20) throw std::invalid_argument("brute_force_corner_opt: n too large (max 20)");
  PointOpt best;
  bool any = false;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    const Vec01 corner = Vec01::indicator(n, mask);
    if (!membership(P, {}, corner, tol::kInvariant)) continue;
    const double v = F.value(corner);
    if (!any || v > best.value) {
      best = {corner, v};
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("brute_force_corner_opt: no feasible corner");
  return best;
}

PointOpt grid_opt(const DrFunction& F, const PackingPolytope& P, int resolution) {
  const int n = F.dimension();
  if (n != P.dimension()) throw std::invalid_argument("grid_opt: dimension mismatch");
  if (resolution < 1) throw std::invalid_argument("grid_opt: resolution must be >= 1");
  double points = 1.0;
  for (int u = 0; u < n; ++u) points *= static_cast<double>(resolution + 1);
  if (points > 1e7) throw std::invalid_argument("grid_opt: grid too large");

  std::vector<int> idx(static_cast<size_t>(n), 0);
  RealVec coords(static_cast<size_t>(n), 0.0);
  PointOpt best;
  bool any = false;
  for (;;) {
    for (int u = 0; u < n; ++u)
      coords[static_cast<size_t>(u)] =
          static_cast<double>(idx[static_cast<size_t>(u)]) / static_cast<double>(resolution);
    Vec01 x{RealVec(coords)};
    if (membership(P, {}, x, tol::kInvariant)) {
      const double v = F.value(x);
      if (!any || v > best.value) {
        best = {x, v};
        any = true;
      }
    }
    int u = 0;
    while (u < n && ++idx[static_cast<size_t>(u)] > resolution) {
      idx[static_cast<size_t>(u)] = 0;
      ++u;
    }
    if (u == n) break;
  }
  if (!any) throw std::invalid_argument("grid_opt: empty feasible grid");
  return best;
}

namespace {

double expansion_rhs(const DrFunction& F, std::span<const Vec01> xs, std::span<const double> ps) {
  const int r = static_cast<int>(xs.size());
  const int n = F.dimension();
  double rhs = 0.0;
  std::vector<Vec01> members;
  for (uint32_t subset = 0; subset < (1u << r); ++subset) {
    double weight = 1.0;
    for (int i = 0; i < r; ++i)
      weight *= (subset >> i & 1u) ? ps[static_cast<size_t>(i)] : 1.0 - ps[static_cast<size_t>(i)];
    if (weight == 0.0) continue;
    members.clear();
    for (int i = 0; i < r; ++i)
      if (subset >> i & 1u) members.push_back(xs[static_cast<size_t>(i)]);
    rhs += weight * F.value(psum_many(n, members));
  }
  return rhs;
}

double expansion_lhs(const DrFunction& F, std::span<const Vec01> xs, std::span<const double> ps) {
  const int n = F.dimension();
  std::vector<Vec01> scaled;
  scaled.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) scaled.push_back(scale(ps[i], xs[i]));
  return F.value(psum_many(n, scaled));
}

// Push p entries toward {0,1} while the violation persists; reports the most
// integral violating configuration reached within the step budget.
template <typename LhsRhs>
void shrink_violation(std::vector<double> ps, LhsRhs eval, BoundCheck& out) {
  auto violates = [&](const std::vector<double>& p, double& lhs, double& rhs) {
    eval(p, lhs, rhs);
    return lhs < rhs - tol::kInvariant;
  };
  double lhs = 0.0, rhs = 0.0;
  if (!violates(ps, lhs, rhs)) return;
  int steps = 0;
  bool progress = true;
  while (progress && steps < 100) {
    progress = false;
    for (size_t i = 0; i < ps.size() && steps < 100; ++i) {
      const double target = ps[i] < 0.5 ? 0.0 : 1.0;
      if (ps[i] == target) continue;
      std::vector<double> probe = ps;
      probe[i] = target;
      double l, r;
      ++steps;
      if (violates(probe, l, r)) {
        ps = std::move(probe);
        progress = true;
        continue;
      }
      probe = ps;
      probe[i] = 0.5 * (ps[i] + target);
      ++steps;
      if (violates(probe, l, r)) {
        ps = std::move(probe);
        progress = true;
      }
    }
  }
  violates(ps, out.shrunk_lhs, out.shrunk_rhs);
  out.shrunk_p = std::move(ps);
}

}  // namespace

BoundCheck verify_basic_bound(const DrFunction& F, std::span<const Vec01> xs,
                              std::span<const double> ps) {
  if (xs.size() != ps.size()) throw std::invalid_argument("verify_basic_bound: xs/ps mismatch");
  if (xs.size() > 12) throw std::invalid_argument("verify_basic_bound: r too large (max 12)");
  for (double p : ps)
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("verify_basic_bound: p outside [0,1]");
  BoundCheck check;
  check.lhs = expansion_lhs(F, xs, ps);
  check.rhs = expansion_rhs(F, xs, ps);
  check.holds = check.lhs >= check.rhs - tol::kInvariant;
  if (!check.holds) {
    std::vector<Vec01> xs_copy(xs.begin(), xs.end());
    shrink_violation(std::vector<double>(ps.begin(), ps.end()),
                     [&](const std::vector<double>& p, double& lhs, double& rhs) {
                       lhs = expansion_lhs(F, xs_copy, p);
                       rhs = expansion_rhs(F, xs_copy, p);
                     },
                     check);
  }
  return check;
}

BoundCheck verify_general_bound(const DrFunction& F, std::span<const Vec01> blocks,
                                std::span<const std::vector<Vec01>> xs,
                                std::span<const double> ps) {
  const int n = F.dimension();
  const int h = static_cast<int>(blocks.size());
  const int r = static_cast<int>(ps.size());
  if (h < 1 || static_cast<int>(xs.size()) != h)
    throw std::invalid_argument("verify_general_bound: need one direction list per block");
  if (r > 12) throw std::invalid_argument("verify_general_bound: r too large (max 12)");
  for (const auto& list : xs)
    if (static_cast<int>(list.size()) != r)
      throw std::invalid_argument("verify_general_bound: direction list length mismatch");
  for (int u = 0; u < n; ++u) {
    double total = 0.0;
    for (const Vec01& b : blocks) total += b[u];
    if (std::fabs(total - 1.0) > 1e-12)
      throw std::invalid_argument("verify_general_bound: blocks must sum to the all-ones vector");
  }

  auto combine = [&](uint32_t subset, bool scaled, const std::vector<double>& p) {
    RealVec acc(static_cast<size_t>(n), 0.0);
    std::vector<Vec01> members;
    for (int i = 0; i < h; ++i) {
      members.clear();
      for (int j = 0; j < r; ++j) {
        if (!scaled) {
          if (subset >> j & 1u) members.push_back(xs[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        } else {
          members.push_back(scale(p[static_cast<size_t>(j)], xs[static_cast<size_t>(i)][static_cast<size_t>(j)]));
        }
      }
      const Vec01 mixed = psum_many(n, members);
      for (int u = 0; u < n; ++u) acc[static_cast<size_t>(u)] += blocks[static_cast<size_t>(i)][u] * mixed[u];
    }
    return F.value(Vec01(std::move(acc)));
  };

  std::vector<double> p(ps.begin(), ps.end());
  auto eval = [&](const std::vector<double>& probs, double& lhs, double& rhs) {
    lhs = combine(0, /*scaled=*/true, probs);
    rhs = 0.0;
    for (uint32_t subset = 0; subset < (1u << r); ++subset) {
      double weight = 1.0;
      for (int j = 0; j < r; ++j)
        weight *= (subset >> j & 1u) ? probs[static_cast<size_t>(j)] : 1.0 - probs[static_cast<size_t>(j)];
      if (weight == 0.0) continue;
      rhs += weight * combine(subset, /*scaled=*/false, probs);
    }
  };

  BoundCheck check;
  eval(p, check.lhs, check.rhs);
  check.holds = check.lhs >= check.rhs - tol::kInvariant;
  if (!check.holds) shrink_violation(p, eval, check);
  return check;
}

double smoothness_oracle(const DrFunction& F, int trials, uint64_t seed) {
  const int n = F.dimension();
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    RealVec a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
      a[static_cast<size_t>(u)] = rng.uniform();
      b[static_cast<size_t>(u)] = rng.uniform();
    }
    const Vec01 x{RealVec(a)}, y{RealVec(b)};
    const double dist = dist2(x, y);
    if (dist < 1e-9) continue;
    const RealVec gx = F.gradient(x);
    const RealVec gy = F.gradient(y);
    RealVec diff(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) diff[static_cast<size_t>(u)] = gx[static_cast<size_t>(u)] - gy[static_cast<size_t>(u)];
    const double ratio = norm2(diff) / dist;
    if (ratio > worst) worst = ratio;
  }
  return worst;
}

bool marginal_bound_check(const SetFunction& f) {
  const int n = f.dimension();
  if (n > 20) throw std::invalid_argument("marginal_bound_check: n too large (max 20)");
  const double bound = f.value_bound();
  for (uint32_t mask = 0; mask < (1u << n); ++mask)
    if (f(mask) > bound + 1e-12) return false;
  return true;
}

OracleBundle make_oracle_bundle(const DrFunction& F, const PackingPolytope& P, int resolution,
                                const Vec01& z) {
  OracleBundle bundle;
  bundle.corner = brute_force_corner_opt(F, P);
  bundle.grid = grid_opt(F, P, resolution);
  bundle.resolution = resolution;
  bundle.f_union = F.value(psum(z, bundle.grid.x));
  bundle.f_isect = F.value(hprod(z, bundle.grid.x));
  return bundle;
}

}  // namespace drsubmax
