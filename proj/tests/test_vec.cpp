#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drsubmax/rng.hpp"
#include "drsubmax/vec.hpp"

using namespace drsubmax;

TEST_CASE("psum definition and neutral elements") {
  const Vec01 half{RealVec{0.5}};
  CHECK(psum(half, half)[0] == doctest::Approx(0.75).epsilon(1e-15));

  Rng rng(7);
  RealVec c(4);
  for (double& v : c) v = rng.uniform();
  const Vec01 a{RealVec(c)};
  const Vec01 zero(4);
  const Vec01 one = Vec01::ones(4);
  for (int u = 0; u < 4; ++u) {
    CHECK(psum(a, zero)[u] == doctest::Approx(a[u]).epsilon(1e-15));
    CHECK(psum(a, one)[u] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hprod(a, one)[u] == doctest::Approx(a[u]).epsilon(1e-15));
  }
}

TEST_CASE("psum is symmetric and associative on sampled triples") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    RealVec ca(3), cb(3), cc(3);
    for (int u = 0; u < 3; ++u) {
      ca[u] = rng.uniform();
      cb[u] = rng.uniform();
      cc[u] = rng.uniform();
    }
    const Vec01 a{RealVec(ca)}, b{RealVec(cb)}, c{RealVec(cc)};
    for (int u = 0; u < 3; ++u) {
      CHECK(psum(a, b)[u] == doctest::Approx(psum(b, a)[u]).epsilon(1e-14));
      CHECK(psum(psum(a, b), c)[u] == doctest::Approx(psum(a, psum(b, c))[u]).epsilon(1e-13));
    }
  }
}

TEST_CASE("vee and wedge are coordinate-wise max and min") {
  const Vec01 a{RealVec{0.2, 0.9}};
  const Vec01 b{RealVec{0.5, 0.1}};
  CHECK(vee(a, b)[0] == 0.5);
  CHECK(vee(a, b)[1] == 0.9);
  CHECK(wedge(a, b)[0] == 0.2);
  CHECK(wedge(a, b)[1] == 0.1);
}

TEST_CASE("psum_many matches the closed form and handles the empty list") {
  const std::vector<Vec01> three(3, Vec01{RealVec{0.5}});
  CHECK(psum_many(1, three)[0] == doctest::Approx(0.875).epsilon(1e-15));
  const Vec01 empty = psum_many(2, {});
  CHECK(empty[0] == 0.0);
  CHECK(empty[1] == 0.0);
}

TEST_CASE("dimension mismatches are rejected") {
  const Vec01 a(2), b(3);
  CHECK_THROWS_AS(psum(a, b), std::invalid_argument);
  CHECK_THROWS_AS(vee(a, b), std::invalid_argument);
  CHECK_THROWS_AS((void)inner(RealVec{1.0}, b), std::invalid_argument);
}

TEST_CASE("coordinates are clamped within tolerance and rejected beyond") {
  const Vec01 ok{RealVec{1.0 + 1e-13, -1e-13}};
  CHECK(ok[0] == 1.0);
  CHECK(ok[1] == 0.0);
  CHECK_THROWS_AS(Vec01{RealVec{1.0 + 1e-9}}, std::invalid_argument);
  CHECK_THROWS_AS(Vec01{RealVec{-1e-9}}, std::invalid_argument);
}

TEST_CASE("lattice identities hold on sampled pairs") {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    RealVec ca(2), cb(2);
    for (int u = 0; u < 2; ++u) {
      ca[u] = rng.uniform();
      cb[u] = rng.uniform();
    }
    const Vec01 a{RealVec(ca)}, b{RealVec(cb)};
    for (int u = 0; u < 2; ++u) {
      // vee + wedge = a + b, psum + hprod = a + b
      CHECK(vee(a, b)[u] + wedge(a, b)[u] == doctest::Approx(a[u] + b[u]).epsilon(1e-14));
      CHECK(psum(a, b)[u] + hprod(a, b)[u] == doctest::Approx(a[u] + b[u]).epsilon(1e-14));
      CHECK(hprod(a, b)[u] <= wedge(a, b)[u] + 1e-15);
      CHECK(psum(a, b)[u] + 1e-15 >= vee(a, b)[u]);
    }
  }
}

TEST_CASE("coordinate hash distinguishes beyond resolution and not below") {
  const Vec01 a{RealVec{0.5, 0.25}};
  const Vec01 b{RealVec{0.5, 0.25 + 1e-12}};
  const Vec01 c{RealVec{0.5, 0.25 + 1e-6}};
  CHECK(coordinate_hash(a) == coordinate_hash(b));
  CHECK(coordinate_hash(a) != coordinate_hash(c));
}
