#pragma once

#include <iosfwd>
#include <vector>

#include "drsubmax/dr_function.hpp"
#include "drsubmax/polytope.hpp"

namespace drsubmax {

// Guessed values driving the threshold schedule: estimates of the optimum
// value, of the value at the intersection-like point z*o, and at the
// union-like point z(+)o (coordinate product / probabilistic sum with an
// optimal solution).
struct GuessTriple {
  double opt_guess = 0.0;
  double isect_guess = 0.0;
  double union_guess = 0.0;
};

// Enumerates triples so that, whenever c * F(opt) <= v_lower <= F(opt), some
// member sandwiches the three unknown values to within eps * opt_guess:
//   opt:   geometric grid (1-eps)^i * v_lower / c, i = 1 .. ceil(log_{1-eps} c) + 1
//   union: arithmetic grid eps*i*g, 0 <= i <= 2/(eps(1-eps)) + 1
//   isect: arithmetic grid eps*i*g, 0 <= i <= 1/(eps(1-eps)) + 1
// Throws when v_lower <= 0 or c outside (0,1).
std::vector<GuessTriple> build_guess_set(double v_lower, double c, double epsilon);

// Threshold schedule of the guided run: the value target the next direction
// must clear, as a function of the step index. switch_step marks where the
// damping vector turns off. Index range is [0, steps-1].
double schedule_value(int i, int switch_step, double delta, double epsilon,
                      const GuessTriple& triple);
// The damping vector: z before the switch step, zero after.
Vec01 schedule_z(int i, int switch_step, const Vec01& z);

struct GuidedStep {
  double value_target = 0.0;  // schedule value for this step
  double f_y_prev = 0.0;
  bool q_empty = false;       // cut region was empty; direction fell back to 0
  double certificate = 0.0;   // local-max certificate (0 when q_empty)
  double cut_slack = 0.0;     // <w, direction> - threshold (0 when q_empty)
  Vec01 y_after;
};

struct GuidedGreedyResult {
  Vec01 y_final;
  std::vector<Vec01> directions;  // one per step
  std::vector<GuidedStep> steps;
  GuessTriple triple;
  double delta_used = 0.0;
  double epsilon_used = 0.0;
  int switch_step = 0;  // ceil(switch_time / delta)
};

// Measured continuous greedy steered by value-target cuts: at every step the
// direction is an approximate local maximum of F over P restricted to
// directions whose weighted inner product clears the schedule, computed by
// the Frank-Wolfe search. delta is reduced to 1/ceil(1/min{delta, epsilon});
// the run takes exactly delta^-1 steps
//   y(i) = y(i-1) + delta * (1 - y(i-1) - z(i-1)) * x(i)
// and returns y(delta^-1) plus every direction x(i). Empty cut regions yield
// the zero direction (feasible, flagged in the step record).
GuidedGreedyResult guided_greedy(const DrFunction& F, const PackingPolytope& P, const Vec01& z,
                                 double switch_time, double epsilon, double delta,
                                 const GuessTriple& triple, std::ostream* trace = nullptr);

}  // namespace drsubmax
