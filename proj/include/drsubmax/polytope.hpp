#pragma once

#include <iosfwd>
#include <vector>

#include "drsubmax/vec.hpp"

namespace drsubmax {

// Explicit packing polytope {x in [0,1]^n : A x <= b} with A, b >= 0.
// Non-negativity of (A, b) makes the region down-closed and guarantees 0 is
// feasible. Immutable after construction.
class PackingPolytope {
 public:
  PackingPolytope(int n, std::vector<RealVec> rows, RealVec rhs);

  int dimension() const { return n_; }
  int row_count() const { return static_cast<int>(rhs_.size()); }
  const RealVec& row(int i) const { return rows_[static_cast<size_t>(i)]; }
  double rhs(int i) const { return rhs_[static_cast<size_t>(i)]; }

  // true iff the indicator of every singleton is feasible.
  bool admits_singletons(double tolerance) const;

 private:
  int n_;
  std::vector<RealVec> rows_;
  RealVec rhs_;
};

// Extra halfspace <normal, x> >= threshold used to carve sub-regions out of a
// packing polytope. The normal may have entries of any sign.
struct Halfspace {
  RealVec normal;
  double threshold = 0.0;
};

// Builders for the common constraint families.
PackingPolytope make_hypercube(int n);
PackingPolytope make_cardinality(int n, double k);
PackingPolytope make_knapsack(RealVec weights, double budget);
// groups partition {0..n-1}; capacity per group.
PackingPolytope make_partition_matroid(int n, const std::vector<std::vector<int>>& groups,
                                       const RealVec& capacities);

bool membership(const PackingPolytope& P, std::span<const Halfspace> cuts, const Vec01& x,
                double tolerance);

// sqrt(n): a valid diameter upper bound for any region inside the unit box.
double diameter_bound(const PackingPolytope& P);

// Exhaustive vertex enumeration over active-constraint subsets. Intended for
// debugging and desk-scale oracles (n <= 12 with few rows); throws when the
// number of candidate active sets is unreasonably large.
std::vector<Vec01> enumerate_vertices(const PackingPolytope& P, std::span<const Halfspace> cuts);

void write_vertices_csv(std::ostream& out, const PackingPolytope& P);

}  // namespace drsubmax
