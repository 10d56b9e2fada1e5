#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "drsubmax/dr_function.hpp"
#include "drsubmax/polytope.hpp"
#include "drsubmax/set_function.hpp"

namespace drsubmax {

// Independent ground-truth layer: exhaustive optima and direct evaluation of
// the two probabilistic-expansion inequalities. Everything here is brute
// force on purpose; the solvers must never be consulted.

struct SetOpt {
  uint32_t mask = 0;
  double value = 0.0;
};

// Exhaustive max of f over {S : indicator(S) feasible}; n <= 20.
SetOpt brute_force_set_opt(const SetFunction& f, const PackingPolytope& P);

// Same enumeration for an arbitrary objective at the integral corners.
struct PointOpt {
  Vec01 x;
  double value = 0.0;
};
PointOpt brute_force_corner_opt(const DrFunction& F, const PackingPolytope& P);

// Max of F over the feasible grid {0, 1/m, ..., 1}^n; (m+1)^n capped at 1e7.
PointOpt grid_opt(const DrFunction& F, const PackingPolytope& P, int resolution);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  // Populated on failure: the smallest violating probability vector found by
  // pushing entries toward {0,1}, with its sides.
  std::vector<double> shrunk_p;
  double shrunk_lhs = 0.0;
  double shrunk_rhs = 0.0;
};

// F(psum of p_i * x(i)) >= sum over S of prod(p)/prod(1-p) weighted
// F(psum over S); exact subset expansion, r <= 12.
BoundCheck verify_basic_bound(const DrFunction& F, std::span<const Vec01> xs,
                              std::span<const double> ps);

// Block-partitioned generalization: blocks b(i) summing to 1, per-block
// direction lists; reduces to the basic bound at h = 1.
BoundCheck verify_general_bound(const DrFunction& F, std::span<const Vec01> blocks,
                                std::span<const std::vector<Vec01>> xs,
                                std::span<const double> ps);

// Largest sampled gradient-difference ratio; a lower witness for the true
// smoothness constant, so it must never exceed the declared bound.
double smoothness_oracle(const DrFunction& F, int trials, uint64_t seed);

// f(S) <= value_bound() for every S, exhaustively (n <= 20).
bool marginal_bound_check(const SetFunction& f);

struct OracleBundle {
  PointOpt corner;
  PointOpt grid;
  int resolution = 0;
  double f_union = 0.0;  // F(z (+) o) at the grid optimum o
  double f_isect = 0.0;  // F(z * o)
};

OracleBundle make_oracle_bundle(const DrFunction& F, const PackingPolytope& P, int resolution,
                                const Vec01& z);

}  // namespace drsubmax
