#include <doctest.h>

#include <random>

#include "ratdyn/bigint.hpp"
#include "ratdyn/bigrat.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/factor.hpp"

using namespace ratdyn;

namespace {

// Plain trial division, independent of the library's sieve and rho paths.
std::map<std::uint64_t, unsigned> naive_factor(std::uint64_t n) {
  std::map<std::uint64_t, unsigned> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("BigInt small and large arithmetic agree") {
  BigInt a = BigInt::parse("9223372036854775807");
  CHECK(a.is_small());
  BigInt b = a + BigInt(1);
  CHECK_FALSE(b.is_small());
  CHECK(b.to_string() == "9223372036854775808");
  CHECK((b - BigInt(1)).is_small());
  CHECK(b - BigInt(1) == a);
  CHECK(BigInt::parse("-9223372036854775808").to_string() == "-9223372036854775808");
  CHECK(BigInt::pow2(100).to_string() == "1267650600228229401496703205376");
  CHECK(pow(BigInt(18), 9).to_string() == "198359290368");
  CHECK(pow(BigInt(30), 15).to_string() == "14348907000000000000000");
  CHECK(BigInt(-7) / BigInt(2) == BigInt(-3));
  CHECK(BigInt(-7) % BigInt(2) == BigInt(-1));
  CHECK(floor_div(BigInt(-7), BigInt(2)) == BigInt(-4));
  CHECK(mod_floor(BigInt(-7), BigInt(2)) == BigInt(1));
  CHECK(gcd(BigInt(-12), BigInt(18)) == BigInt(6));
  CHECK(gcd(BigInt(0), BigInt(0)) == BigInt(0));
  CHECK(BigInt(0).sign() == 0);
  CHECK(BigInt(-5).sign() == -1);
  CHECK_THROWS_AS(BigInt::parse("12a"), std::invalid_argument);
  CHECK_THROWS_AS(BigInt::parse(""), std::invalid_argument);
}

TEST_CASE("BigInt matches 128-bit arithmetic on random operands") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 5000; ++i) {
    auto x = static_cast<std::int64_t>(rng()) >> (rng() % 60);
    auto y = static_cast<std::int64_t>(rng()) >> (rng() % 60);
    __int128 px = x, py = y;
    auto to_big = [](__int128 v) {
      bool neg = v < 0;
      unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
      std::string s;
      do {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
      } while (u != 0);
      return BigInt::parse((neg ? "-" : "") + s);
    };
    CHECK(BigInt(x) + BigInt(y) == to_big(px + py));
    CHECK(BigInt(x) - BigInt(y) == to_big(px - py));
    CHECK(BigInt(x) * BigInt(y) == to_big(px * py));
    if (y != 0) {
      CHECK(BigInt(x) / BigInt(y) == to_big(px / py));
      CHECK(BigInt(x) % BigInt(y) == to_big(px % py));
    }
    CHECK((BigInt(x) < BigInt(y)) == (x < y));
  }
}

TEST_CASE("BigRat stays in lowest terms") {
  BigRat r(BigInt(4), BigInt(-6));
  CHECK(r.num() == BigInt(-2));
  CHECK(r.den() == BigInt(3));
  CHECK(BigRat::parse("-29/16").to_string() == "-29/16");
  CHECK(BigRat::parse("6/3").to_string() == "2");
  CHECK(BigRat::parse("1/2") + BigRat::parse("1/3") == BigRat::parse("5/6"));
  CHECK(BigRat::parse("1/2") < BigRat::parse("2/3"));
  CHECK_THROWS_AS(BigRat(BigInt(1), BigInt(0)), std::domain_error);
  CHECK_THROWS_AS(BigRat::parse("1/"), std::invalid_argument);
}

TEST_CASE("valuation examples") {
  CHECK(valuation(BigRat(-2), BigInt(2)) == 1);
  CHECK(valuation(BigRat::parse("9/4"), BigInt(2)) == -2);
  CHECK(valuation(BigRat(5), BigInt(7)) == 0);
  CHECK_THROWS_AS(valuation(BigRat(0), BigInt(2)), ValuationUndefined);
  CHECK_THROWS_AS(valuation(BigRat(6), BigInt(4)), std::invalid_argument);
}

TEST_CASE("factorize examples") {
  auto f = factorize(BigInt(65536));
  CHECK(f.size() == 1);
  CHECK(f.exponent(BigInt(2)) == 16);
  auto g = factorize(BigInt(60));
  CHECK(g.size() == 3);
  CHECK(g.exponent(BigInt(2)) == 2);
  CHECK(g.exponent(BigInt(3)) == 1);
  CHECK(g.exponent(BigInt(5)) == 1);
  CHECK(factorize(BigInt(1)).empty());
  CHECK(factorize(BigInt(-12)).product() == BigInt(12));
  CHECK_THROWS_AS(factorize(BigInt(0)), std::invalid_argument);
}

TEST_CASE("factorize handles products of large primes") {
  // 1000003 * 1000033 and a 40-bit semiprime exercise the rho path.
  BigInt n = BigInt(1000003) * BigInt(1000033);
  auto f = factorize(n);
  CHECK(f.size() == 2);
  CHECK(f.exponent(BigInt(1000003)) == 1);
  BigInt p = BigInt::parse("1000000007"), q = BigInt::parse("998244353");
  auto h = factorize(p * q * p);
  CHECK(h.exponent(p) == 2);
  CHECK(h.exponent(q) == 1);
  BigInt big_prime = BigInt::parse("18446744073709551557");  // largest prime below 2^64
  CHECK(is_prime(big_prime));
  auto k = factorize(big_prime * BigInt(6));
  CHECK(k.exponent(big_prime) == 1);
}

TEST_CASE("factorize gives up explicitly when the budget is exhausted") {
  BigInt p = BigInt::parse("4294967311"), q = BigInt::parse("4294967357");
  FactorOptions tiny;
  tiny.rho_budget = 1;
  CHECK_THROWS_AS(factorize(p * q, tiny), FactorizationIncomplete);
}

TEST_CASE("primality is refused above the certified range") {
  CHECK(is_prime(BigInt(2)));
  CHECK_FALSE(is_prime(BigInt(1)));
  CHECK_FALSE(is_prime(BigInt(3215031751LL)));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_THROWS_AS(is_prime(primality_limit()), PrimalityOutOfRange);
}

TEST_CASE("property: factorization reconstructs random n up to 1e12") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> dist(2, 1000000000000ULL);
  for (int i = 0; i < 150; ++i) {
    std::uint64_t n = dist(rng);
    auto f = factorize(BigInt(n));
    CHECK(f.product() == BigInt(n));
    auto oracle = naive_factor(n);
    REQUIRE(f.size() == oracle.size());
    for (const auto& [p, e] : oracle) CHECK(f.exponent(BigInt(p)) == e);
    for (const auto& [p, e] : f) CHECK(is_prime(p));
  }
}

TEST_CASE("property: primality agrees with trial division") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    std::uint64_t n = rng() % 2000000;
    CHECK(is_prime(BigInt(n)) == naive_prime(n));
  }
}

TEST_CASE("property: valuation is additive and matches factorization") {
  std::mt19937_64 rng(13);
  const std::int64_t primes[] = {2, 3, 5, 7, 11, 13, 101};
  auto rand_rat = [&] {
    std::int64_t n = static_cast<std::int64_t>(rng() % 200000) - 100000;
    if (n == 0) n = 1;
    std::int64_t d = static_cast<std::int64_t>(rng() % 5000) + 1;
    return BigRat(BigInt(n), BigInt(d));
  };
  for (int i = 0; i < 2000; ++i) {
    BigRat x = rand_rat(), y = rand_rat();
    for (std::int64_t p : primes) {
      CHECK(valuation(x * y, BigInt(p)) == valuation(x, BigInt(p)) + valuation(y, BigInt(p)));
      int from_factors = static_cast<int>(factorize(x.num()).exponent(BigInt(p))) -
                         static_cast<int>(factorize(x.den()).exponent(BigInt(p)));
      CHECK(valuation(x, BigInt(p)) == from_factors);
    }
  }
}

TEST_CASE("divisors are complete and ascending") {
  auto d = divisors(factorize(BigInt(60)));
  std::vector<BigInt> expect;
  for (int i = 1; i <= 60; ++i) {
    if (60 % i == 0) expect.emplace_back(i);
  }
  CHECK(d == expect);
}
