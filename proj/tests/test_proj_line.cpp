#include <doctest.h>

#include <random>

#include "ratdyn/proj_point.hpp"

using namespace ratdyn;

namespace {

ProjPoint pt(long x, long y) { return ProjPoint::from_integers(BigInt(x), BigInt(y)); }

long mod(long a, long p) { return ((a % p) + p) % p; }

// Reductions of [x:y] and [u:v] mod p coincide when xv = uy mod p.
bool same_mod_p(const ProjPoint& a, const ProjPoint& b, long p) {
  long x = mod(*a.x().to_int64(), p), y = mod(*a.y().to_int64(), p);
  long u = mod(*b.x().to_int64(), p), v = mod(*b.y().to_int64(), p);
  return mod(x * v - u * y, p) == 0;
}

}  // namespace

TEST_CASE("canonicalize examples") {
  ProjPoint a = ProjPoint::canonicalize(BigRat::parse("4/6"), BigRat(1));
  CHECK(a.x() == BigInt(2));
  CHECK(a.y() == BigInt(3));
  CHECK(ProjPoint::canonicalize(BigRat(1), BigRat(0)) == ProjPoint::infinity());
  ProjPoint c = ProjPoint::canonicalize(BigRat(-2), BigRat(-4));
  CHECK(c.x() == BigInt(1));
  CHECK(c.y() == BigInt(2));
  CHECK(ProjPoint::canonicalize(BigRat(-3), BigRat(0)) == ProjPoint::infinity());
  CHECK_THROWS_AS(ProjPoint::canonicalize(BigRat(0), BigRat(0)), std::invalid_argument);
}

TEST_CASE("point syntax round trips") {
  CHECK(ProjPoint::parse("inf").is_infinity());
  CHECK(ProjPoint::parse("-7/4") == pt(-7, 4));
  CHECK(ProjPoint::parse("[2:-4]") == pt(-1, 2));
  CHECK(ProjPoint::parse("[1:0]").is_infinity());
  CHECK(pt(-7, 4).to_string() == "-7/4");
  CHECK(pt(3, 1).to_string() == "3");
  CHECK(ProjPoint::infinity().to_string() == "inf");
  CHECK(pt(1, -1).to_projective_string() == "[-1:1]");
  CHECK_THROWS_AS(ProjPoint::parse("[0:0]"), std::invalid_argument);
  CHECK_THROWS_AS(ProjPoint::parse("1/0x"), std::invalid_argument);
}

TEST_CASE("ordering puts infinity last") {
  CHECK(pt(-1, 4) < pt(1, 4));
  CHECK(pt(7, 4) < ProjPoint::infinity());
  CHECK(pt(-100, 1) < pt(-99, 1));
}

TEST_CASE("log_distance examples") {
  CHECK(log_distance(pt(1, 1), pt(3, 1), BigInt(2)) == Distance::finite(1));
  CHECK(log_distance(pt(5, 3), pt(5, 3), BigInt(7)).is_infinite());
  CHECK(log_distance(pt(0, 1), pt(1, 0), BigInt(3)) == Distance::finite(0));
  CHECK_THROWS_AS(log_distance(pt(0, 1), pt(1, 0), BigInt(9)), std::invalid_argument);
  CHECK(Distance::finite(3) < Distance::infinite());
  CHECK(Distance::infinite().to_string() == "inf");
}

TEST_CASE("distance_support examples") {
  auto a = distance_support(pt(0, 1), pt(2, 1));
  CHECK(a.entries.size() == 1);
  CHECK(a.at(BigInt(2)) == 1);
  CHECK(distance_support(pt(-1, 1), pt(0, 1)).entries.empty());
  auto c = distance_support(pt(3, 1), pt(1, 2));
  CHECK(c.entries.size() == 1);
  CHECK(c.at(BigInt(5)) == 1);
  CHECK(c.at(BigInt(3)) == 0);
  CHECK_THROWS_AS(distance_support(pt(1, 2), pt(1, 2)), std::invalid_argument);
}

TEST_CASE("property: scaling invariance, symmetry and the zero criterion") {
  std::mt19937_64 rng(101);
  const long primes[] = {2, 3, 5, 7, 11, 13};
  auto rand_point = [&] {
    long x = static_cast<long>(rng() % 201) - 100;
    long y = static_cast<long>(rng() % 201) - 100;
    if (x == 0 && y == 0) y = 1;
    return pt(x, y);
  };
  for (int i = 0; i < 3000; ++i) {
    long x = static_cast<long>(rng() % 2001) - 1000;
    long y = static_cast<long>(rng() % 2001) - 1000;
    if (x == 0 && y == 0) continue;
    long ln = static_cast<long>(rng() % 40) - 20, ld = static_cast<long>(rng() % 30) + 1;
    if (ln == 0) ln = 3;
    BigRat lambda{BigInt(ln), BigInt(ld)};
    CHECK(ProjPoint::canonicalize(lambda * BigRat(x), lambda * BigRat(y)) ==
          ProjPoint::canonicalize(BigRat(x), BigRat(y)));

    ProjPoint p = rand_point(), q = rand_point();
    for (long prime : primes) {
      Distance d = log_distance(p, q, BigInt(prime));
      CHECK(d == log_distance(q, p, BigInt(prime)));
      CHECK(d.is_infinite() == (p == q));
      if (!d.is_infinite()) CHECK((d.value() == 0) == !same_mod_p(p, q, prime));
    }
  }
}

TEST_CASE("property: support lists exactly the primes with positive distance") {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 500; ++i) {
    ProjPoint p = pt(static_cast<long>(rng() % 301) - 150, static_cast<long>(rng() % 300) + 1);
    ProjPoint q = pt(static_cast<long>(rng() % 301) - 150, static_cast<long>(rng() % 300) + 1);
    if (p == q) continue;
    auto s = distance_support(p, q);
    for (long prime = 2; prime < 400; ++prime) {
      if (!is_prime(BigInt(prime))) continue;
      CHECK(log_distance(p, q, BigInt(prime)).value() == s.at(BigInt(prime)));
    }
  }
}
