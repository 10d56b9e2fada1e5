#include "drsubmax/set_function.hpp"

#include <stdexcept>
#include <utility>

namespace drsubmax {

namespace {

double compute_value_bound(int n, const SetFunction::EvalFn& eval) {
  double best_singleton = 0.0;
  for (int u = 0; u < n; ++u) {
    const double fu = eval(1u << u);
    if (fu > best_singleton) best_singleton = fu;
  }
  const double f_empty = eval(0u);
  const double by_singletons = static_cast<double>(n) * best_singleton;
  return f_empty > by_singletons ? f_empty : by_singletons;
}

}  // namespace

SetFunction::SetFunction(int n, std::string family, EvalFn eval)
    : n_(n), family_(std::move(family)), eval_(std::move(eval)) {
  if (n_ < 1 || n_ > 30) throw std::invalid_argument("SetFunction: dimension out of range");
  value_bound_ = compute_value_bound(n_, eval_);
}

SetFunction make_cut_function(int n, std::vector<CutEdge> edges) {
  for (const CutEdge& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n || e.from == e.to)
      throw std::invalid_argument("cut edge endpoints out of range");
    if (e.weight < 0.0) throw std::invalid_argument("cut edge weight negative");
  }
  return SetFunction(n, "cut", [edges = std::move(edges)](uint32_t mask) {
    double total = 0.0;
    for (const CutEdge& e : edges)
      if ((mask >> e.from & 1u) && !(mask >> e.to & 1u)) total += e.weight;
    return total;
  });
}

SetFunction make_coverage_function(int n, CoverageSystem system) {
  const int universe = static_cast<int>(system.element_weights.size());
  if (static_cast<int>(system.covers.size()) != n)
    throw std::invalid_argument("coverage: covers list must have one entry per ground element");
  for (double w : system.element_weights)
    if (w < 0.0) throw std::invalid_argument("coverage: negative element weight");
  for (const auto& list : system.covers)
    for (int e : list)
      if (e < 0 || e >= universe) throw std::invalid_argument("coverage: element id out of range");
  return SetFunction(n, "coverage", [system = std::move(system), universe](uint32_t mask) {
    std::vector<char> covered(static_cast<size_t>(universe), 0);
    for (size_t u = 0; u < system.covers.size(); ++u) {
      if (!(mask >> u & 1u)) continue;
      for (int e : system.covers[u]) covered[static_cast<size_t>(e)] = 1;
    }
    double total = 0.0;
    for (int e = 0; e < universe; ++e)
      if (covered[static_cast<size_t>(e)]) total += system.element_weights[static_cast<size_t>(e)];
    return total;
  });
}

SetFunction make_table_function(int n, std::vector<double> values) {
  if (n > 20) throw std::invalid_argument("table function: n too large (max 20)");
  if (values.size() != (size_t{1} << n))
    throw std::invalid_argument("table function: need exactly 2^n values");
  for (double v : values)
    if (v < 0.0) throw std::invalid_argument("table function: negative value");
  return SetFunction(n, "table",
                     [values = std::move(values)](uint32_t mask) { return values[mask]; });
}

bool is_submodular(const SetFunction& f, double slack) {
  const int n = f.dimension();
  if (n > 14) throw std::invalid_argument("is_submodular: exhaustive check capped at n=14");
  const uint32_t full = f.full_mask();
  std::vector<double> table(size_t{1} << n);
  for (uint32_t s = 0; s <= full; ++s) table[s] = f(s);
  for (uint32_t a = 0; a <= full; ++a) {
    for (uint32_t b = a + 1; b <= full; ++b) {
      if (table[a] + table[b] + slack < table[a | b] + table[a & b]) return false;
    }
  }
  return true;
}

}  // namespace drsubmax
