#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "drsubmax/guided_greedy.hpp"

namespace drsubmax {

enum class GuessMode { Baseline, Oracle };

struct SolveParams {
  double switch_time = 0.3682;  // CLI flag --t-s
  double epsilon = 0.1;
  double delta = 0.05;
  int max_depth = 2;
  int children_per_node = 4;   // recursion fan-out cap; <= 0 means unlimited
  int triples_per_node = 24;   // guess-triple budget per node; <= 0 means all
  bool exhaustive_mode = false;     // removes both caps, depth = 1 + ceil(2/eps)
  GuessMode guess_mode = GuessMode::Baseline;
  double oracle_v_lower = 0.0;  // required when guess_mode == Oracle
  // c for the guess enumeration; NaN = auto (baseline: 1/e - 0.02,
  // oracle: 1 - eps after normalization).
  double guess_c = std::numeric_limits<double>::quiet_NaN();
  uint64_t seed = 0;  // recorded in reports; the solver itself is deterministic
  bool record_candidates = true;
};

struct Candidate {
  std::string origin;      // z0 | baseline | box | guided
  std::vector<int> path;   // recursion path (child indices), empty at the root
  int triple_index = -1;   // guided candidates only
  double value = 0.0;
  Vec01 x;
};

struct NodeRecord {
  std::vector<int> path;
  Vec01 z;
  int guided_runs = 0;
  int q_empty_steps = 0;
};

struct SolveReport {
  Vec01 best_x;
  double best_value = 0.0;
  std::string best_origin;
  std::vector<int> best_path;
  std::vector<Candidate> candidates;
  std::vector<NodeRecord> nodes;
  long node_count = 0;
  long long value_evals = 0;
  long long gradient_evals = 0;
  double wall_ms = 0.0;  // stdout only; never serialized (outputs must be rerun-identical)
  // normalization applied at entry
  double epsilon_used = 0.0;
  double delta_used = 0.0;
  double switch_time = 0.0;
  int depth_used = 0;
  int triples_used = 0;
  double v_lower = 0.0;
  double guess_c = 0.0;
  uint64_t seed = 0;
};

// The 1/e baseline: y(i) = y(i-1) + delta (1 - y(i-1)) * x(i) with x(i) a
// linear maximizer of the damped gradient over P. delta is replaced by
// 1/ceil(1/delta).
Vec01 measured_greedy(const DrFunction& F, const PackingPolytope& P, double delta);

// Full solve: local-max seed, baseline, then the guided-greedy recursion with
// box maximization at every node; returns the best candidate found.
SolveReport solve(const DrFunction& F, const PackingPolytope& P, const SolveParams& params);

// One recursion subtree starting from a given z at the given level, using the
// same normalization and guess machinery as solve(); exposed for tests.
Vec01 solve_recursive(const DrFunction& F, const PackingPolytope& P, const SolveParams& params,
                      const Vec01& z, int level, SolveReport* report = nullptr);

// Closed-form check of the approximation constants: the three coefficients of
// the combined bound at alpha = 0.1974, r = 2.22, switch time 0.3682. The
// optimum coefficient must land in [0.401, 0.4013] and the two drop terms
// must be non-negative (within 1e-4).
struct ConstantsReport {
  double alpha = 0.0;
  double r = 0.0;
  double switch_time = 0.0;
  double coef_opt = 0.0;
  double coef_isect = 0.0;
  double coef_union = 0.0;
  bool coef_opt_in_range = false;
  bool drop_terms_nonneg = false;
  bool pass = false;
};

ConstantsReport verify_constants();

}  // namespace drsubmax
