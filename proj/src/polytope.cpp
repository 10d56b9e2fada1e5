#include "drsubmax/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "drsubmax/tolerances.hpp"

namespace drsubmax {

PackingPolytope::PackingPolytope(int n, std::vector<RealVec> rows, RealVec rhs)
    : n_(n), rows_(std::move(rows)), rhs_(std::move(rhs)) {
  if (n_ < 1) throw std::invalid_argument("PackingPolytope: dimension must be positive");
  if (rows_.size() != rhs_.size())
    throw std::invalid_argument("PackingPolytope: row/rhs count mismatch");
  for (const RealVec& row : rows_) {
    if (static_cast<int>(row.size()) != n_)
      throw std::invalid_argument("PackingPolytope: row width mismatch");
    for (double a : row)
      if (a < 0.0 || !std::isfinite(a))
        throw std::invalid_argument("PackingPolytope: packing rows must be non-negative");
  }
  for (double b : rhs_)
    if (b < 0.0 || !std::isfinite(b))
      throw std::invalid_argument("PackingPolytope: rhs must be non-negative");
}

bool PackingPolytope::admits_singletons(double tolerance) const {
  for (int u = 0; u < n_; ++u)
    for (int i = 0; i < row_count(); ++i)
      if (rows_[static_cast<size_t>(i)][static_cast<size_t>(u)] > rhs_[static_cast<size_t>(i)] + tolerance)
        return false;
  return true;
}

PackingPolytope make_hypercube(int n) { return PackingPolytope(n, {}, {}); }

PackingPolytope make_cardinality(int n, double k) {
  if (k < 0.0) throw std::invalid_argument("make_cardinality: negative capacity");
  return PackingPolytope(n, {RealVec(static_cast<size_t>(n), 1.0)}, {k});
}

PackingPolytope make_knapsack(RealVec weights, double budget) {
  if (budget < 0.0) throw std::invalid_argument("make_knapsack: negative budget");
  for (double w : weights)
    if (w < 0.0) throw std::invalid_argument("make_knapsack: negative weight");
  const int n = static_cast<int>(weights.size());
  return PackingPolytope(n, {std::move(weights)}, {budget});
}

PackingPolytope make_partition_matroid(int n, const std::vector<std::vector<int>>& groups,
                                       const RealVec& capacities) {
  if (groups.size() != capacities.size())
    throw std::invalid_argument("make_partition_matroid: group/capacity count mismatch");
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<RealVec> rows;
  for (size_t g = 0; g < groups.size(); ++g) {
    if (capacities[g] < 0.0) throw std::invalid_argument("make_partition_matroid: negative capacity");
    RealVec row(static_cast<size_t>(n), 0.0);
    for (int u : groups[g]) {
      if (u < 0 || u >= n) throw std::invalid_argument("make_partition_matroid: element out of range");
      if (seen[static_cast<size_t>(u)])
        throw std::invalid_argument("make_partition_matroid: element in two groups");
      seen[static_cast<size_t>(u)] = 1;
      row[static_cast<size_t>(u)] = 1.0;
    }
    rows.push_back(std::move(row));
  }
  return PackingPolytope(n, std::move(rows), capacities);
}

bool membership(const PackingPolytope& P, std::span<const Halfspace> cuts, const Vec01& x,
                double tolerance) {
  if (x.dimension() != P.dimension()) throw std::invalid_argument("membership: dimension mismatch");
  for (int u = 0; u < x.dimension(); ++u)
    if (x[u] < -tolerance || x[u] > 1.0 + tolerance) return false;
  for (int i = 0; i < P.row_count(); ++i)
    if (inner(P.row(i), x) > P.rhs(i) + tolerance) return false;
  for (const Halfspace& cut : cuts) {
    if (static_cast<int>(cut.normal.size()) != P.dimension())
      throw std::invalid_argument("membership: cut dimension mismatch");
    if (inner(cut.normal, x) < cut.threshold - tolerance) return false;
  }
  return true;
}

double diameter_bound(const PackingPolytope& P) {
  return std::sqrt(static_cast<double>(P.dimension()));
}

namespace {

// Solve the n x n system rows * x = rhs by Gaussian elimination with partial
// pivoting; returns false when singular.
bool solve_square(std::vector<RealVec> rows, RealVec rhs, RealVec& out) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    double best = 1e-11;
    for (int r = col; r < n; ++r) {
      const double a = std::fabs(rows[static_cast<size_t>(r)][static_cast<size_t>(col)]);
      if (a > best) {
        best = a;
        pivot = r;
      }
    }
    if (pivot < 0) return false;
    std::swap(rows[static_cast<size_t>(col)], rows[static_cast<size_t>(pivot)]);
    std::swap(rhs[static_cast<size_t>(col)], rhs[static_cast<size_t>(pivot)]);
    const double d = rows[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = rows[static_cast<size_t>(r)][static_cast<size_t>(col)] / d;
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c)
        rows[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
            factor * rows[static_cast<size_t>(col)][static_cast<size_t>(c)];
      rhs[static_cast<size_t>(r)] -= factor * rhs[static_cast<size_t>(col)];
    }
  }
  out.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] =
        rhs[static_cast<size_t>(i)] / rows[static_cast<size_t>(i)][static_cast<size_t>(i)];
  return true;
}

}  // namespace

std::vector<Vec01> enumerate_vertices(const PackingPolytope& P, std::span<const Halfspace> cuts) {
  const int n = P.dimension();
  // Candidate hyperplanes: packing rows, cut boundaries, x_u = 0, x_u = 1.
  struct Plane {
    RealVec normal;
    double rhs;
  };
  std::vector<Plane> planes;
  for (int i = 0; i < P.row_count(); ++i) planes.push_back({P.row(i), P.rhs(i)});
  for (const Halfspace& cut : cuts) planes.push_back({cut.normal, cut.threshold});
  for (int u = 0; u < n; ++u) {
    RealVec e(static_cast<size_t>(n), 0.0);
    e[static_cast<size_t>(u)] = 1.0;
    planes.push_back({e, 0.0});
    planes.push_back({std::move(e), 1.0});
  }

  const int p = static_cast<int>(planes.size());
  // C(p, n) candidate active sets; refuse absurd workloads.
  double combos = 1.0;
  for (int i = 0; i < n; ++i) combos *= static_cast<double>(p - i) / (i + 1);
  if (combos > 2e6) throw std::invalid_argument("enumerate_vertices: too many candidate active sets");

  std::vector<Vec01> vertices;
  std::vector<int> pick(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pick[static_cast<size_t>(i)] = i;
  auto advance = [&]() {
    int i = n - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == p - n + i) --i;
    if (i < 0) return false;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < n; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    return true;
  };
  do {
    std::vector<RealVec> rows;
    RealVec rhs;
    for (int i = 0; i < n; ++i) {
      rows.push_back(planes[static_cast<size_t>(pick[static_cast<size_t>(i)])].normal);
      rhs.push_back(planes[static_cast<size_t>(pick[static_cast<size_t>(i)])].rhs);
    }
    RealVec point;
    if (!solve_square(std::move(rows), std::move(rhs), point)) continue;
    bool in_box = true;
    for (double& v : point) {
      if (v < -1e-8 || v > 1.0 + 1e-8) {
        in_box = false;
        break;
      }
      v = std::clamp(v, 0.0, 1.0) + 0.0;  // drops negative zero
    }
    if (!in_box) continue;
    Vec01 x{std::move(point)};
    if (!membership(P, cuts, x, 1e-8)) continue;
    bool duplicate = false;
    for (const Vec01& v : vertices) {
      if (dist2(v, x) < 1e-7) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) vertices.push_back(std::move(x));
  } while (advance());
  return vertices;
}

void write_vertices_csv(std::ostream& out, const PackingPolytope& P) {
  const auto vertices = enumerate_vertices(P, {});
  out << "vertex";
  for (int u = 0; u < P.dimension(); ++u) out << ",x" << u;
  out << "\n";
  char buf[32];
  for (size_t i = 0; i < vertices.size(); ++i) {
    out << i;
    for (int u = 0; u < P.dimension(); ++u) {
      std::snprintf(buf, sizeof buf, "%.12g", vertices[i][u]);
      out << ',' << buf;
    }
    out << "\n";
  }
}

}  // namespace drsubmax
