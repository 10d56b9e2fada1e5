#pragma once

#include <cstdint>
#include <cstring>
#include <span>

// Small deterministic RNG utilities. We avoid std::uniform_real_distribution
// because its output is implementation-defined; seeded runs must reproduce
// bit-identically.
namespace drsubmax {

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro-style generator seeded via splitmix; good enough for sampling and
// stable across compilers.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Order-sensitive hash of raw double bit patterns, used to derive pure
// per-query sampling streams (same input -> same stream).
inline uint64_t hash_doubles(std::span<const double> values, uint64_t seed) {
  uint64_t h = seed ^ 0x8824a2f1c7f6a3b5ULL;
  for (double v : values) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    h ^= bits;
    h = splitmix64(h);
  }
  return h;
}

}  // namespace drsubmax
