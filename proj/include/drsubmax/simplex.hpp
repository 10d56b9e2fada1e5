#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "drsubmax/polytope.hpp"
#include "drsubmax/vec.hpp"

namespace drsubmax {

// Thrown when the simplex gives up (cycling guard / unbounded ray); distinct
// from an infeasible region, which is a normal status.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LpStatus { Optimal, Infeasible, NumericBreakdown };

struct LpResult {
  LpStatus status = LpStatus::NumericBreakdown;
  Vec01 x;
  double objective = 0.0;
};

// Opaque warm-start handle. A state is only reused when the constraint system
// it was built for is byte-identical (checked by fingerprint); otherwise the
// solve silently falls back to a cold start. Re-solving the same region with
// a slowly changing objective this way usually costs zero or one pivot.
class SimplexState {
 public:
  void reset() { valid_ = false; }

 private:
  friend class BoundedSimplex;
  bool valid_ = false;
  uint64_t fingerprint_ = 0;
  std::vector<int> basis_;
  std::vector<uint8_t> at_upper_;
};

// Maximize <c, x> over P intersected with the given >=-halfspaces and the
// unit box, by a dense bounded-variable primal simplex (Dantzig pricing,
// Bland's rule after 10(n+m) degenerate pivots, deterministic tie-breaks).
LpResult lp_maximize(const PackingPolytope& P, std::span<const Halfspace> cuts, const RealVec& c,
                     SimplexState* state = nullptr);

}  // namespace drsubmax
