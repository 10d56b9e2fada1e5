#pragma once

#include <span>
#include <vector>

#include "drsubmax/dr_function.hpp"

namespace drsubmax {

// Uniform coordinate grid {j / denom : 0 <= j <= denom * span_fraction};
// double_greedy uses step eps/n, i.e. denom = n * eps^-1.
struct CoordGrid {
  long denom = 1;
  long count = 1;  // grid points are j/denom for j in [0, count]
  double value(long j) const { return static_cast<double>(j) / static_cast<double>(denom); }
};

struct SegmentPick {
  double v = 0.0;      // maximizing grid value
  long grid_index = 0;
  double delta = 0.0;  // F at maximizer - F(base), >= 0 because 0 is on the grid
};

// Maximize F along one coordinate over the grid, moving up from base (which
// must have base[u] = 0) or down from it (base[u] = 1). DR-submodularity
// makes the values along the segment concave, so the sequence splits into an
// increasing, a flat and a decreasing part; a binary search over the
// difference signs finds the leftmost maximizer in O(log |grid|) evaluations.
SegmentPick segment_argmax(const DrFunction& F, const Vec01& base, int u, bool upward,
                           const CoordGrid& grid);

struct DgStep {
  int u = 0;
  double a = 0.0, b = 0.0;
  double delta_a = 0.0, delta_b = 0.0;
  double new_value = 0.0;
  double gain_x = 0.0, gain_y = 0.0;  // F increase of the two solutions
};

struct DgResult {
  Vec01 x;
  double value = 0.0;
  double epsilon_used = 0.0;
  long long evals_used = 0;
  std::vector<DgStep> steps;
};

// Per-coordinate double-sided greedy for non-negative DR-submodular F over
// the whole box. eps is replaced by 1/(2*ceil(1/eps)) so eps^-1 is an even
// integer (which puts 1/2 on the value grid). Runs one pass over the
// coordinates (natural order unless a permutation is supplied), agreeing the
// lower and the upper solution on one coordinate per step.
DgResult double_greedy(const DrFunction& F, double epsilon, std::span<const int> order = {});

// Best vector dominated by x: runs double_greedy on a -> F(x * a) and returns
// x * a_best (coordinate-wise product), which is feasible in any down-closed
// region containing x.
Vec01 box_maximize(const DrFunction& F, const Vec01& x, double epsilon);

}  // namespace drsubmax
