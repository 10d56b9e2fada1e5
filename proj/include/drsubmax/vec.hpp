#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace drsubmax {

using RealVec = std::vector<double>;

// A point of the unit box [0,1]^n. Coordinates are validated on construction:
// values within tol::kCoordClamp of the box are snapped onto it, anything
// further out throws. Immutable except through set(), which re-validates.
class Vec01 {
 public:
  Vec01() = default;
  explicit Vec01(int dimension);          // all zeros
  explicit Vec01(RealVec coords);         // validated + clamped
  static Vec01 ones(int dimension);
  static Vec01 indicator(int dimension, unsigned mask);

  int dimension() const { return static_cast<int>(c_.size()); }
  double operator[](int u) const { return c_[static_cast<size_t>(u)]; }
  void set(int u, double value);          // validated + clamped
  const RealVec& coords() const { return c_; }
  std::span<const double> span() const { return c_; }

  bool operator==(const Vec01& other) const { return c_ == other.c_; }

 private:
  RealVec c_;
};

void check_same_dimension(const Vec01& a, const Vec01& b);

// Lattice / probabilistic operators. All are coordinate-wise and
// dimension-checked.
Vec01 vee(const Vec01& a, const Vec01& b);    // max
Vec01 wedge(const Vec01& a, const Vec01& b);  // min
Vec01 hprod(const Vec01& a, const Vec01& b);  // product
Vec01 psum(const Vec01& a, const Vec01& b);   // 1 - (1-a)(1-b)

// Probabilistic sum of a list; the empty list yields the zero vector of the
// given dimension.
Vec01 psum_many(int dimension, std::span<const Vec01> vs);

Vec01 scale(double lambda, const Vec01& a);   // lambda in [0,1]
Vec01 complement(const Vec01& a);             // 1 - a

double inner(std::span<const double> a, std::span<const double> b);
double inner(const RealVec& a, const Vec01& b);
double norm2(std::span<const double> a);
double dist2(const Vec01& a, const Vec01& b);

// true iff a <= b coordinate-wise (up to slack).
bool dominated(const Vec01& a, const Vec01& b, double slack = 0.0);

// Hash at fixed resolution, used to deduplicate candidate vectors.
uint64_t coordinate_hash(const Vec01& a, double resolution = 1e-9);

}  // namespace drsubmax
