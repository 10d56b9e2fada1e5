#include "drsubmax/vec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "drsubmax/rng.hpp"
#include "drsubmax/tolerances.hpp"

namespace drsubmax {

namespace {

double clamp01(double v, const char* what) {
  if (v < -tol::kCoordClamp || v > 1.0 + tol::kCoordClamp) {
    throw std::invalid_argument(std::string(what) + ": coordinate " +
                                std::to_string(v) + " outside [0,1]");
  }
  if (v < 0.0) return 0.0;
  if (v > 1.0) return 1.0;
  return v;
}

}  // namespace

Vec01::Vec01(int dimension) {
  if (dimension < 0) throw std::invalid_argument("Vec01: negative dimension");
  c_.assign(static_cast<size_t>(dimension), 0.0);
}

Vec01::Vec01(RealVec coords) : c_(std::move(coords)) {
  for (double& v : c_) v = clamp01(v, "Vec01");
}

Vec01 Vec01::ones(int dimension) {
  Vec01 v(dimension);
  for (double& x : v.c_) x = 1.0;
  return v;
}

Vec01 Vec01::indicator(int dimension, unsigned mask) {
  Vec01 v(dimension);
  for (int u = 0; u < dimension; ++u)
    if (mask & (1u << u)) v.c_[static_cast<size_t>(u)] = 1.0;
  return v;
}

void Vec01::set(int u, double value) {
  c_.at(static_cast<size_t>(u)) = clamp01(value, "Vec01::set");
}

void check_same_dimension(const Vec01& a, const Vec01& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("dimension mismatch: " +
                                std::to_string(a.dimension()) + " vs " +
                                std::to_string(b.dimension()));
  }
}

namespace {

template <typename Op>
Vec01 zip(const Vec01& a, const Vec01& b, Op op) {
  check_same_dimension(a, b);
  RealVec out(a.coords());
  for (int u = 0; u < a.dimension(); ++u) out[static_cast<size_t>(u)] = op(a[u], b[u]);
  return Vec01(std::move(out));
}

}  // namespace

Vec01 vee(const Vec01& a, const Vec01& b) {
  return zip(a, b, [](double x, double y) { return x > y ? x : y; });
}

Vec01 wedge(const Vec01& a, const Vec01& b) {
  return zip(a, b, [](double x, double y) { return x < y ? x : y; });
}

Vec01 hprod(const Vec01& a, const Vec01& b) {
  return zip(a, b, [](double x, double y) { return x * y; });
}

Vec01 psum(const Vec01& a, const Vec01& b) {
  return zip(a, b, [](double x, double y) { return 1.0 - (1.0 - x) * (1.0 - y); });
}

Vec01 psum_many(int dimension, std::span<const Vec01> vs) {
  RealVec keep_out(static_cast<size_t>(dimension), 1.0);
  for (const Vec01& v : vs) {
    if (v.dimension() != dimension)
      throw std::invalid_argument("psum_many: dimension mismatch");
    for (int u = 0; u < dimension; ++u)
      keep_out[static_cast<size_t>(u)] *= 1.0 - v[u];
  }
  for (double& k : keep_out) k = 1.0 - k;
  return Vec01(std::move(keep_out));
}

Vec01 scale(double lambda, const Vec01& a) {
  if (lambda < 0.0 || lambda > 1.0 + tol::kCoordClamp)
    throw std::invalid_argument("scale: factor outside [0,1]");
  RealVec out(a.coords());
  for (double& v : out) v *= lambda;
  return Vec01(std::move(out));
}

Vec01 complement(const Vec01& a) {
  RealVec out(a.coords());
  for (double& v : out) v = 1.0 - v;
  return Vec01(std::move(out));
}

double inner(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inner(const RealVec& a, const Vec01& b) { return inner(std::span<const double>(a), b.span()); }

double norm2(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

double dist2(const Vec01& a, const Vec01& b) {
  check_same_dimension(a, b);
  double s = 0.0;
  for (int u = 0; u < a.dimension(); ++u) {
    const double d = a[u] - b[u];
    s += d * d;
  }
  return std::sqrt(s);
}

bool dominated(const Vec01& a, const Vec01& b, double slack) {
  check_same_dimension(a, b);
  for (int u = 0; u < a.dimension(); ++u)
    if (a[u] > b[u] + slack) return false;
  return true;
}

uint64_t coordinate_hash(const Vec01& a, double resolution) {
  uint64_t h = 0x51ab3f2790c0ffeeULL ^ static_cast<uint64_t>(a.dimension());
  for (int u = 0; u < a.dimension(); ++u) {
    h ^= static_cast<uint64_t>(std::llround(a[u] / resolution));
    h = splitmix64(h);
  }
  return h;
}

}  // namespace drsubmax
