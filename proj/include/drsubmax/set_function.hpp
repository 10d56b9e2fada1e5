#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace drsubmax {

// A weighted directed edge u -> v.
struct CutEdge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

// Coverage instance: ground element u covers the listed universe elements.
struct CoverageSystem {
  std::vector<double> element_weights;     // weight per universe element
  std::vector<std::vector<int>> covers;    // covers[u] = universe elements of u
};

// Non-negative set function over ground set {0..n-1}, evaluated on bitmasks.
// Submodularity is a semantic contract checked by tests and the verification
// suites, not by the constructor.
class SetFunction {
 public:
  using EvalFn = std::function<double(uint32_t mask)>;

  SetFunction(int n, std::string family, EvalFn eval);

  int dimension() const { return n_; }
  const std::string& family() const { return family_; }
  double operator()(uint32_t mask) const { return eval_(mask & full_mask()); }
  uint32_t full_mask() const { return n_ == 32 ? 0xffffffffu : ((1u << n_) - 1u); }

  // M = max{f(empty), n * max_u f({u})}; every value of a non-negative
  // submodular f is bounded by it.
  double value_bound() const { return value_bound_; }

 private:
  int n_;
  std::string family_;
  EvalFn eval_;
  double value_bound_;
};

SetFunction make_cut_function(int n, std::vector<CutEdge> edges);
SetFunction make_coverage_function(int n, CoverageSystem system);
// values.size() must be 2^n; values[mask] = f(mask); all values >= 0.
SetFunction make_table_function(int n, std::vector<double> values);

// Exhaustive submodularity check, 2^n pairs; n <= 12 intended, n <= 14 hard cap.
bool is_submodular(const SetFunction& f, double slack = 1e-9);

}  // namespace drsubmax
