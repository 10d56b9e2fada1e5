#include "drsubmax/dr_function.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "drsubmax/rng.hpp"
#include "drsubmax/tolerances.hpp"

namespace drsubmax {

DrFunction::DrFunction(int n, EvalFn eval, GradFn grad, double smoothness_bound, Mode mode,
                       std::string family)
    : n_(n),
      eval_(std::move(eval)),
      grad_(std::move(grad)),
      smoothness_(smoothness_bound),
      mode_(mode),
      family_(std::move(family)),
      counters_(std::make_shared<Counters>()) {
  if (n_ < 1) throw std::invalid_argument("DrFunction: dimension must be positive");
  if (smoothness_ < 0.0) throw std::invalid_argument("DrFunction: negative smoothness bound");
}

double DrFunction::value(const Vec01& x) const {
  if (x.dimension() != n_) throw std::invalid_argument("DrFunction::value: dimension mismatch");
  counters_->values.fetch_add(1, std::memory_order_relaxed);
  return eval_(x);
}

RealVec DrFunction::gradient(const Vec01& x) const {
  if (x.dimension() != n_) throw std::invalid_argument("DrFunction::gradient: dimension mismatch");
  counters_->gradients.fetch_add(1, std::memory_order_relaxed);
  return grad_(x);
}

DrFunction make_quadratic(const std::vector<RealVec>& H, const RealVec& h, double c,
                          bool assume_nonnegative) {
  const int n = static_cast<int>(h.size());
  if (n < 1) throw std::invalid_argument("make_quadratic: empty h");
  if (static_cast<int>(H.size()) != n)
    throw std::invalid_argument("make_quadratic: H must be n x n");
  for (const RealVec& row : H) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("make_quadratic: H must be n x n");
    for (double v : row)
      if (v > 0.0) throw std::invalid_argument("make_quadratic: positive entry in H");
  }

  // Symmetrize so the analytic gradient is Hx + h regardless of how the
  // caller filled the triangle; entrywise sign is preserved.
  std::vector<RealVec> Hs(H);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      Hs[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          0.5 * (H[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                 H[static_cast<size_t>(j)][static_cast<size_t>(i)]);

  double frob = 0.0;
  for (const RealVec& row : Hs)
    for (double v : row) frob += v * v;
  const double smoothness = std::sqrt(frob);

  auto eval = [Hs, h, c, n](const Vec01& x) {
    double quad = 0.0;
    for (int i = 0; i < n; ++i) {
      double hx = 0.0;
      for (int j = 0; j < n; ++j) hx += Hs[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[j];
      quad += x[i] * hx;
    }
    double lin = 0.0;
    for (int i = 0; i < n; ++i) lin += h[static_cast<size_t>(i)] * x[i];
    return 0.5 * quad + lin + c;
  };

  if (!assume_nonnegative) {
    if (n > 20)
      throw std::invalid_argument(
          "make_quadratic: corner certification limited to n <= 20; pass assume_nonnegative");
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      const double v = eval(Vec01::indicator(n, mask));
      if (v < -tol::kInvariant)
        throw std::invalid_argument("make_quadratic: negative value at a box corner");
    }
  }

  auto grad = [Hs, h, n](const Vec01& x) {
    RealVec g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      double gi = h[static_cast<size_t>(i)];
      for (int j = 0; j < n; ++j) gi += Hs[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[j];
      g[static_cast<size_t>(i)] = gi;
    }
    return g;
  };

  return DrFunction(n, std::move(eval), std::move(grad), smoothness, DrFunction::Mode::Exact,
                    assume_nonnegative && n > 20 ? "quadratic-assumed-nonnegative" : "quadratic");
}

namespace {

// Shared state for the exact extension: the full value table of f.
struct ExactTable {
  int n;
  std::vector<double> values;  // values[mask] = f(mask)
};

double exact_value(const ExactTable& t, const Vec01& x) {
  const uint32_t count = 1u << t.n;
  double total = 0.0;
  for (uint32_t mask = 0; mask < count; ++mask) {
    double p = 1.0;
    for (int u = 0; u < t.n; ++u) p *= (mask >> u & 1u) ? x[u] : 1.0 - x[u];
    if (p != 0.0) total += p * t.values[mask];
  }
  return total;
}

}  // namespace

DrFunction multilinear_exact(const SetFunction& f) {
  const int n = f.dimension();
  if (n > 20) throw std::invalid_argument("multilinear_exact: n too large (max 20)");

  auto table = std::make_shared<ExactTable>();
  table->n = n;
  table->values.resize(size_t{1} << n);
  double nonneg_floor = 0.0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    table->values[mask] = f(mask);
    if (table->values[mask] < nonneg_floor) nonneg_floor = table->values[mask];
  }
  if (nonneg_floor < -tol::kInvariant)
    throw std::invalid_argument("multilinear_exact: set function takes a negative value");

  auto eval = [table](const Vec01& x) { return exact_value(*table, x); };

  // dF/dx_u of a multilinear function equals its value with x_u pinned to 1
  // minus its value with x_u pinned to 0. One sweep over the table computes
  // all n partials: the per-mask weight with coordinate u skipped is a
  // prefix/suffix product, added with the sign of u's membership.
  auto grad = [table, n](const Vec01& x) {
    RealVec g(static_cast<size_t>(n), 0.0);
    RealVec factor(static_cast<size_t>(n));
    RealVec prefix(static_cast<size_t>(n) + 1);
    RealVec suffix(static_cast<size_t>(n) + 1);
    const uint32_t count = 1u << n;
    for (uint32_t mask = 0; mask < count; ++mask) {
      const double f = table->values[mask];
      if (f == 0.0) continue;
      for (int u = 0; u < n; ++u)
        factor[static_cast<size_t>(u)] = (mask >> u & 1u) ? x[u] : 1.0 - x[u];
      prefix[0] = 1.0;
      for (int u = 0; u < n; ++u) prefix[static_cast<size_t>(u) + 1] = prefix[static_cast<size_t>(u)] * factor[static_cast<size_t>(u)];
      suffix[static_cast<size_t>(n)] = 1.0;
      for (int u = n - 1; u >= 0; --u) suffix[static_cast<size_t>(u)] = suffix[static_cast<size_t>(u) + 1] * factor[static_cast<size_t>(u)];
      for (int u = 0; u < n; ++u) {
        const double skip = prefix[static_cast<size_t>(u)] * suffix[static_cast<size_t>(u) + 1];
        if (skip == 0.0) continue;
        g[static_cast<size_t>(u)] += (mask >> u & 1u) ? f * skip : -f * skip;
      }
    }
    return g;
  };

  const double smoothness = 2.0 * n * f.value_bound();
  return DrFunction(n, std::move(eval), std::move(grad), smoothness, DrFunction::Mode::Exact,
                    "multilinear:" + f.family());
}

DrFunction multilinear_sampled(const SetFunction& f, long sample_count, uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("multilinear_sampled: need sample_count >= 1");
  const int n = f.dimension();
  auto fn = std::make_shared<SetFunction>(f);

  // One pass over the common draw stream; gradient components use the same
  // draws with u forced in/out of the sample set.
  auto eval = [fn, n, sample_count, seed](const Vec01& x) {
    Rng rng(hash_doubles(x.span(), seed));
    double acc = 0.0;
    for (long s = 0; s < sample_count; ++s) {
      uint32_t mask = 0;
      for (int u = 0; u < n; ++u)
        if (rng.uniform() < x[u]) mask |= 1u << u;
      acc += (*fn)(mask);
    }
    return acc / static_cast<double>(sample_count);
  };

  auto grad = [fn, n, sample_count, seed](const Vec01& x) {
    Rng rng(hash_doubles(x.span(), seed));
    RealVec acc(static_cast<size_t>(n), 0.0);
    for (long s = 0; s < sample_count; ++s) {
      uint32_t mask = 0;
      for (int u = 0; u < n; ++u)
        if (rng.uniform() < x[u]) mask |= 1u << u;
      for (int u = 0; u < n; ++u) {
        const uint32_t bit = 1u << u;
        acc[static_cast<size_t>(u)] += (*fn)(mask | bit) - (*fn)(mask & ~bit);
      }
    }
    for (double& v : acc) v /= static_cast<double>(sample_count);
    return acc;
  };

  const double smoothness = 2.0 * n * f.value_bound();
  return DrFunction(n, std::move(eval), std::move(grad), smoothness, DrFunction::Mode::Sampled,
                    "multilinear-sampled:" + f.family());
}

}  // namespace drsubmax
