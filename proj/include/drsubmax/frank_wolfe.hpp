#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "drsubmax/dr_function.hpp"
#include "drsubmax/polytope.hpp"

namespace drsubmax {

struct LocalMaxResult {
  Vec01 x_star;
  double certificate = 0.0;  // min over iterations of <z(i) - x(i-1), grad F(x(i-1))>
  int iterations_run = 0;
  int i_star = 0;                 // 1-based iteration achieving the minimum
  std::vector<double> gap_trace;  // per-iteration inner products, in order
};

// Conditional-gradient search for an approximate local maximum of F over
// P intersected with the given cuts. The step size delta is first replaced by
// 1/ceil(1/delta); the loop then runs exactly delta^-2 iterations of
// x(i) = (1-delta) x(i-1) + delta z(i) with z(i) a linear maximizer of the
// current gradient, and returns the iterate preceding the smallest observed
// gap. The certificate bounds <y - x_star, grad F(x_star)> for every y in the
// region.
//
// start: optional feasible start; defaults to 0 when there are no cuts, and to
// a phase-1 feasible point of the cut region otherwise. Throws
// std::invalid_argument when the region is empty and NumericError when the LP
// breaks down. When `iterates` is given, every x(i) (including x(0)) is
// appended to it. When `trace` is given, one JSON line per iteration
// (iteration, objective, certificate) is written to it.
LocalMaxResult approx_local_max(const DrFunction& F, const PackingPolytope& P,
                                std::span<const Halfspace> cuts, double delta,
                                const std::optional<Vec01>& start = std::nullopt,
                                std::vector<Vec01>* iterates = nullptr,
                                std::ostream* trace = nullptr);

}  // namespace drsubmax
