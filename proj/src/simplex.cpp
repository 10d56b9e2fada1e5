#include "drsubmax/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "drsubmax/rng.hpp"
#include "drsubmax/tolerances.hpp"

namespace drsubmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kInfeasTol = 1e-8;

enum class VarState : uint8_t { AtLower, AtUpper, Basic, Blocked };

}  // namespace

// Dense bounded-variable simplex over rows [G | S | artificials] = h with
// structural bounds [0,1], slack bounds [0,inf). Rows whose natural slack
// start is negative get phase-1 artificials; after phase 1 the artificials
// are fixed at zero and blocked.
class BoundedSimplex {
 public:
  BoundedSimplex(const PackingPolytope& P, std::span<const Halfspace> cuts)
      : n_(P.dimension()), r_(P.row_count() + static_cast<int>(cuts.size())) {
    rows_.assign(static_cast<size_t>(r_), RealVec(static_cast<size_t>(n_), 0.0));
    rhs_.assign(static_cast<size_t>(r_), 0.0);
    for (int i = 0; i < P.row_count(); ++i) {
      rows_[static_cast<size_t>(i)] = P.row(i);
      rhs_[static_cast<size_t>(i)] = P.rhs(i);
    }
    for (size_t k = 0; k < cuts.size(); ++k) {
      if (static_cast<int>(cuts[k].normal.size()) != n_)
        throw std::invalid_argument("lp_maximize: cut dimension mismatch");
      RealVec& row = rows_[static_cast<size_t>(P.row_count()) + k];
      for (int u = 0; u < n_; ++u) row[static_cast<size_t>(u)] = -cuts[k].normal[static_cast<size_t>(u)];
      rhs_[static_cast<size_t>(P.row_count()) + k] = -cuts[k].threshold;
    }
    fingerprint_ = compute_fingerprint();
  }

  uint64_t fingerprint() const { return fingerprint_; }

  LpResult solve(const RealVec& c, SimplexState* state) {
    if (static_cast<int>(c.size()) != n_)
      throw std::invalid_argument("lp_maximize: objective dimension mismatch");
    if (state != nullptr && state->valid_ && state->fingerprint_ == fingerprint_ &&
        warm_start(*state)) {
      if (run(objective_vector(c)) && extract(c)) {
        save_state(state);
        return result_;
      }
      // Warm path failed; fall through to a cold start.
    }
    cold_start();
    if (!phase_one()) {
      if (infeasible_) return LpResult{LpStatus::Infeasible, Vec01(n_), 0.0};
      return LpResult{LpStatus::NumericBreakdown, Vec01(n_), 0.0};
    }
    if (!run(objective_vector(c)) || !extract(c))
      return LpResult{LpStatus::NumericBreakdown, Vec01(n_), 0.0};
    save_state(state);
    return result_;
  }

 private:
  double& t(int i, int j) { return tab_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + j]; }

  uint64_t compute_fingerprint() const {
    uint64_t h = 0x9d3f0aa1u ^ (static_cast<uint64_t>(n_) << 32) ^ static_cast<uint64_t>(r_);
    for (int i = 0; i < r_; ++i) {
      h ^= hash_doubles(rows_[static_cast<size_t>(i)], h);
      h ^= hash_doubles(std::span<const double>(&rhs_[static_cast<size_t>(i)], 1), h);
    }
    return h;
  }

  RealVec objective_vector(const RealVec& c) const {
    RealVec cost(static_cast<size_t>(cols_), 0.0);
    std::copy(c.begin(), c.end(), cost.begin());
    return cost;
  }

  // Build the tableau with slacks basic; rows with negative rhs are negated
  // and given an artificial basic variable.
  void cold_start() {
    arts_ = 0;
    for (double b : rhs_)
      if (b < 0.0) ++arts_;
    cols_ = n_ + r_ + arts_;
    tab_.assign(static_cast<size_t>(r_) * static_cast<size_t>(cols_), 0.0);
    xb_.assign(static_cast<size_t>(r_), 0.0);
    basis_.assign(static_cast<size_t>(r_), -1);
    varstate_.assign(static_cast<size_t>(cols_), VarState::AtLower);
    ub_.assign(static_cast<size_t>(cols_), kInf);
    for (int u = 0; u < n_; ++u) ub_[static_cast<size_t>(u)] = 1.0;

    int art = n_ + r_;
    for (int i = 0; i < r_; ++i) {
      const double sign = rhs_[static_cast<size_t>(i)] < 0.0 ? -1.0 : 1.0;
      for (int u = 0; u < n_; ++u) t(i, u) = sign * rows_[static_cast<size_t>(i)][static_cast<size_t>(u)];
      t(i, n_ + i) = sign;
      xb_[static_cast<size_t>(i)] = sign * rhs_[static_cast<size_t>(i)];
      if (sign < 0.0) {
        t(i, art) = 1.0;
        basis_[static_cast<size_t>(i)] = art;
        varstate_[static_cast<size_t>(art)] = VarState::Basic;
        ++art;
      } else {
        basis_[static_cast<size_t>(i)] = n_ + i;
        varstate_[static_cast<size_t>(n_ + i)] = VarState::Basic;
      }
    }
    infeasible_ = false;
  }

  bool phase_one() {
    if (arts_ == 0) return true;
    RealVec cost(static_cast<size_t>(cols_), 0.0);
    for (int j = n_ + r_; j < cols_; ++j) cost[static_cast<size_t>(j)] = -1.0;
    if (!run(cost)) return false;
    double residue = 0.0;
    for (int i = 0; i < r_; ++i)
      if (basis_[static_cast<size_t>(i)] >= n_ + r_) residue += xb_[static_cast<size_t>(i)];
    if (residue > kInfeasTol) {
      infeasible_ = true;
      return false;
    }
    // Pivot leftover artificials out where possible, then freeze them at 0.
    for (int i = 0; i < r_; ++i) {
      if (basis_[static_cast<size_t>(i)] < n_ + r_) continue;
      int enter = -1;
      double best = kPivotTol;
      for (int j = 0; j < n_ + r_; ++j) {
        if (varstate_[static_cast<size_t>(j)] == VarState::Basic) continue;
        const double a = std::fabs(t(i, j));
        if (a > best) {
          best = a;
          enter = j;
        }
      }
      if (enter >= 0) degenerate_swap(i, enter);
    }
    for (int j = n_ + r_; j < cols_; ++j) {
      ub_[static_cast<size_t>(j)] = 0.0;
      if (varstate_[static_cast<size_t>(j)] != VarState::Basic)
        varstate_[static_cast<size_t>(j)] = VarState::Blocked;
    }
    return true;
  }

  // Swap nonbasic `enter` (kept at its current bound value) for the basic
  // variable of `row`; a pure basis change at the current point.
  void degenerate_swap(int row, int enter) {
    const int leave = basis_[static_cast<size_t>(row)];
    const double value =
        varstate_[static_cast<size_t>(enter)] == VarState::AtUpper ? ub_[static_cast<size_t>(enter)] : 0.0;
    varstate_[static_cast<size_t>(leave)] = VarState::AtLower;
    varstate_[static_cast<size_t>(enter)] = VarState::Basic;
    basis_[static_cast<size_t>(row)] = enter;
    pivot_matrix(row, enter);
    xb_[static_cast<size_t>(row)] = value;
  }

  void pivot_matrix(int row, int col) {
    const double piv = t(row, col);
    const double inv = 1.0 / piv;
    for (int j = 0; j < cols_; ++j) t(row, j) *= inv;
    t(row, col) = 1.0;
    for (int i = 0; i < r_; ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) t(i, j) -= f * t(row, j);
      t(i, col) = 0.0;
    }
  }

  // Core bounded-variable iterations for the given objective. Returns false
  // on breakdown (iteration cap or numeric trouble).
  bool run(const RealVec& cost) {
    const long bland_after = 10L * (n_ + r_);
    const long iter_cap = 2000L + 200L * (n_ + r_);
    long degenerate = 0;
    RealVec cb(static_cast<size_t>(r_));
    for (long iter = 0; iter < iter_cap; ++iter) {
      for (int i = 0; i < r_; ++i) cb[static_cast<size_t>(i)] = cost[static_cast<size_t>(basis_[static_cast<size_t>(i)])];
      const bool bland = degenerate > bland_after;
      int enter = -1, dir = 0;
      double best = tol::kLpOpt;
      for (int j = 0; j < cols_; ++j) {
        const VarState vs = varstate_[static_cast<size_t>(j)];
        if (vs == VarState::Basic || vs == VarState::Blocked) continue;
        double d = cost[static_cast<size_t>(j)];
        for (int i = 0; i < r_; ++i) d -= cb[static_cast<size_t>(i)] * t(i, j);
        int cand_dir = 0;
        if (vs == VarState::AtLower && d > tol::kLpOpt) cand_dir = +1;
        else if (vs == VarState::AtUpper && d < -tol::kLpOpt) cand_dir = -1;
        if (cand_dir == 0) continue;
        if (bland) {
          enter = j;
          dir = cand_dir;
          break;
        }
        if (std::fabs(d) > best) {
          best = std::fabs(d);
          enter = j;
          dir = cand_dir;
        }
      }
      if (enter < 0) return true;  // optimal

      // Ratio test: entering moves by step >= 0 in direction dir.
      double step = ub_[static_cast<size_t>(enter)];  // own bound-flip distance
      int leave_row = -1;
      int leave_to_upper = 0;
      for (int i = 0; i < r_; ++i) {
        const double alpha = dir * t(i, enter);
        double limit;
        int to_upper;
        if (alpha > kPivotTol) {
          limit = xb_[static_cast<size_t>(i)] / alpha;
          to_upper = 0;
        } else if (alpha < -kPivotTol) {
          const double ubi = ub_[static_cast<size_t>(basis_[static_cast<size_t>(i)])];
          if (ubi == kInf) continue;
          limit = (ubi - xb_[static_cast<size_t>(i)]) / (-alpha);
          to_upper = 1;
        } else {
          continue;
        }
        if (limit < 0.0) limit = 0.0;
        if (limit < step - 1e-12 ||
            (limit < step + 1e-12 && leave_row >= 0 &&
             basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave_row)])) {
          step = limit;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      if (step == kInf) return false;  // unbounded ray: numeric trouble here
      if (step < 1e-10) ++degenerate;

      for (int i = 0; i < r_; ++i) xb_[static_cast<size_t>(i)] -= dir * step * t(i, enter);
      if (leave_row < 0) {
        // Bound flip, no basis change.
        varstate_[static_cast<size_t>(enter)] =
            dir > 0 ? VarState::AtUpper : VarState::AtLower;
        continue;
      }
      const int leave = basis_[static_cast<size_t>(leave_row)];
      varstate_[static_cast<size_t>(leave)] = leave_to_upper ? VarState::AtUpper : VarState::AtLower;
      const double enter_from = dir > 0 ? 0.0 : ub_[static_cast<size_t>(enter)];
      varstate_[static_cast<size_t>(enter)] = VarState::Basic;
      basis_[static_cast<size_t>(leave_row)] = enter;
      pivot_matrix(leave_row, enter);
      xb_[static_cast<size_t>(leave_row)] = enter_from + dir * step;
    }
    return false;
  }

  bool extract(const RealVec& c) {
    RealVec x(static_cast<size_t>(n_), 0.0);
    for (int u = 0; u < n_; ++u)
      if (varstate_[static_cast<size_t>(u)] == VarState::AtUpper) x[static_cast<size_t>(u)] = 1.0;
    for (int i = 0; i < r_; ++i) {
      const int v = basis_[static_cast<size_t>(i)];
      if (v < n_) x[static_cast<size_t>(v)] = xb_[static_cast<size_t>(i)];
    }
    double objective = 0.0;
    for (int u = 0; u < n_; ++u) {
      if (x[static_cast<size_t>(u)] < -1e-7 || x[static_cast<size_t>(u)] > 1.0 + 1e-7) return false;
      x[static_cast<size_t>(u)] = std::clamp(x[static_cast<size_t>(u)], 0.0, 1.0);
      objective += c[static_cast<size_t>(u)] * x[static_cast<size_t>(u)];
    }
    result_ = LpResult{LpStatus::Optimal, Vec01(std::move(x)), objective};
    return true;
  }

  void save_state(SimplexState* state) const {
    if (state == nullptr) return;
    for (int i = 0; i < r_; ++i)
      if (basis_[static_cast<size_t>(i)] >= n_ + r_) {
        state->valid_ = false;  // leftover fixed artificial: not worth reusing
        return;
      }
    state->valid_ = true;
    state->fingerprint_ = fingerprint_;
    state->basis_.assign(basis_.begin(), basis_.end());
    state->at_upper_.assign(static_cast<size_t>(n_ + r_), 0);
    for (int j = 0; j < n_ + r_; ++j)
      if (varstate_[static_cast<size_t>(j)] == VarState::AtUpper)
        state->at_upper_[static_cast<size_t>(j)] = 1;
  }

  // Rebuild the tableau for a stored basis by Gauss-Jordan on the original
  // rows; returns false when the basis is singular or no longer feasible.
  bool warm_start(const SimplexState& state) {
    if (static_cast<int>(state.basis_.size()) != r_) return false;
    arts_ = 0;
    cols_ = n_ + r_;
    tab_.assign(static_cast<size_t>(r_) * static_cast<size_t>(cols_), 0.0);
    varstate_.assign(static_cast<size_t>(cols_), VarState::AtLower);
    ub_.assign(static_cast<size_t>(cols_), kInf);
    for (int u = 0; u < n_; ++u) ub_[static_cast<size_t>(u)] = 1.0;
    RealVec v(static_cast<size_t>(r_));  // h - N x_N alongside the elimination
    for (int i = 0; i < r_; ++i) {
      for (int u = 0; u < n_; ++u) t(i, u) = rows_[static_cast<size_t>(i)][static_cast<size_t>(u)];
      t(i, n_ + i) = 1.0;
      v[static_cast<size_t>(i)] = rhs_[static_cast<size_t>(i)];
    }
    for (int j = 0; j < n_ + r_; ++j) {
      if (!state.at_upper_[static_cast<size_t>(j)]) continue;
      if (ub_[static_cast<size_t>(j)] == kInf) return false;
      varstate_[static_cast<size_t>(j)] = VarState::AtUpper;
      for (int i = 0; i < r_; ++i) v[static_cast<size_t>(i)] -= t(i, j) * ub_[static_cast<size_t>(j)];
    }

    basis_.assign(state.basis_.begin(), state.basis_.end());
    std::vector<char> row_done(static_cast<size_t>(r_), 0);
    std::vector<int> row_of(static_cast<size_t>(r_), -1);
    for (int k = 0; k < r_; ++k) {
      const int col = basis_[static_cast<size_t>(k)];
      if (col < 0 || col >= n_ + r_) return false;
      int prow = -1;
      double best = kPivotTol;
      for (int i = 0; i < r_; ++i) {
        if (row_done[static_cast<size_t>(i)]) continue;
        if (std::fabs(t(i, col)) > best) {
          best = std::fabs(t(i, col));
          prow = i;
        }
      }
      if (prow < 0) return false;
      row_done[static_cast<size_t>(prow)] = 1;
      row_of[static_cast<size_t>(k)] = prow;
      const double inv = 1.0 / t(prow, col);
      for (int j = 0; j < cols_; ++j) t(prow, j) *= inv;
      v[static_cast<size_t>(prow)] *= inv;
      t(prow, col) = 1.0;
      for (int i = 0; i < r_; ++i) {
        if (i == prow) continue;
        const double f = t(i, col);
        if (f == 0.0) continue;
        for (int j = 0; j < cols_; ++j) t(i, j) -= f * t(prow, j);
        v[static_cast<size_t>(i)] -= f * v[static_cast<size_t>(prow)];
        t(i, col) = 0.0;
      }
      varstate_[static_cast<size_t>(col)] = VarState::Basic;
    }
    // Reorder rows so row k hosts basis variable k.
    std::vector<int> new_basis(static_cast<size_t>(r_));
    RealVec new_xb(static_cast<size_t>(r_));
    std::vector<double> new_tab(tab_.size());
    for (int k = 0; k < r_; ++k) {
      const int src = row_of[static_cast<size_t>(k)];
      new_basis[static_cast<size_t>(k)] = basis_[static_cast<size_t>(k)];
      new_xb[static_cast<size_t>(k)] = v[static_cast<size_t>(src)];
      std::copy_n(tab_.begin() + static_cast<size_t>(src) * static_cast<size_t>(cols_), cols_,
                  new_tab.begin() + static_cast<size_t>(k) * static_cast<size_t>(cols_));
    }
    tab_ = std::move(new_tab);
    basis_ = std::move(new_basis);
    xb_ = std::move(new_xb);
    for (int i = 0; i < r_; ++i) {
      const double ubi = ub_[static_cast<size_t>(basis_[static_cast<size_t>(i)])];
      if (xb_[static_cast<size_t>(i)] < -kInfeasTol || xb_[static_cast<size_t>(i)] > ubi + kInfeasTol)
        return false;
      xb_[static_cast<size_t>(i)] = std::clamp(xb_[static_cast<size_t>(i)], 0.0, ubi);
    }
    infeasible_ = false;
    return true;
  }

  int n_, r_;
  std::vector<RealVec> rows_;
  RealVec rhs_;
  uint64_t fingerprint_ = 0;

  int cols_ = 0, arts_ = 0;
  std::vector<double> tab_;
  RealVec xb_;
  std::vector<int> basis_;
  std::vector<VarState> varstate_;
  RealVec ub_;
  bool infeasible_ = false;
  LpResult result_;
};

LpResult lp_maximize(const PackingPolytope& P, std::span<const Halfspace> cuts, const RealVec& c,
                     SimplexState* state) {
  BoundedSimplex solver(P, cuts);
  return solver.solve(c, state);
}

}  // namespace drsubmax
