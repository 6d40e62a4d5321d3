#include "ratdyn/factor.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "ratdyn/errors.hpp"

namespace ratdyn {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::uint32_t kTrialBound = 1000000;
constexpr std::uint32_t kEarlyPrimalityCheck = 1000;

std::vector<std::uint32_t> sieve(std::uint32_t bound) {
  std::vector<bool> composite(bound, false);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = u64(i) * i; j < bound; j += i) composite[j] = true;
  }
  return primes;
}

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 pow_mod(u64 base, u64 e, u64 m) {
  u64 r = 1;
  base %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

bool strong_probable_prime(u64 n, u64 a) {
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool strong_probable_prime(const mpz_class& n, unsigned long a) {
  mpz_class d = n - 1;
  mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  mpz_class x;
  mpz_class base(a);
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  mpz_class n1 = n - 1;
  if (x == 1 || x == n1) return true;
  for (mp_bitcnt_t i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n1) return true;
  }
  return false;
}

// First 13 primes: deterministic for n < 3317044064679887385961981.
constexpr unsigned long kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool is_prime_certified(const BigInt& n) {
  if (n < BigInt(2)) return false;
  for (unsigned long p : kWitnesses) {
    if (n == BigInt(p)) return true;
    if ((n % BigInt(p)).is_zero()) return false;
  }
  if (auto small = n.to_int64()) {
    u64 m = static_cast<u64>(*small);
    for (unsigned long a : kWitnesses) {
      if (a == 41) break;  // the first twelve suffice below 2^64
      if (!strong_probable_prime(m, a)) return false;
    }
    return true;
  }
  mpz_class m = n.to_mpz();
  for (unsigned long a : kWitnesses) {
    if (!strong_probable_prime(m, a)) return false;
  }
  return true;
}

class RhoSplitter {
 public:
  explicit RhoSplitter(u64 budget) : remaining_(budget) {}

  // Returns a nontrivial factor of composite n, or nothing when the budget
  // runs out.
  std::optional<BigInt> split(const BigInt& n) {
    for (unsigned long c = 1; remaining_ > 0; ++c) {
      std::optional<BigInt> f;
      if (auto small = n.to_int64()) {
        f = brent_small(static_cast<u64>(*small), c);
      } else {
        f = brent_big(n.to_mpz(), c);
      }
      if (f) return f;
    }
    return std::nullopt;
  }

 private:
  bool spend() {
    if (remaining_ == 0) return false;
    --remaining_;
    return true;
  }

  std::optional<BigInt> brent_small(u64 n, u64 c) {
    if (n % 2 == 0) return BigInt(u64{2});
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
    u64 r = 1;
    constexpr u64 m = 128;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          if (!spend()) return std::nullopt;
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        if (!spend()) return std::nullopt;
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g == n) return std::nullopt;
    return BigInt(g);
  }

  std::optional<BigInt> brent_big(const mpz_class& n, unsigned long c) {
    auto f = [&](const mpz_class& x) {
      mpz_class r = x * x + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    mpz_class y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
    u64 r = 1;
    constexpr u64 m = 128;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          if (!spend()) return std::nullopt;
          y = f(y);
          diff = abs(x - y);
          q = q * diff % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        if (!spend()) return std::nullopt;
        ys = f(ys);
        diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g == n) return std::nullopt;
    return BigInt(g);
  }

  u64 remaining_;
};

}  // namespace

unsigned PrimeFactorization::exponent(const BigInt& p) const {
  auto it = factors_.find(p);
  return it == factors_.end() ? 0 : it->second;
}

std::vector<BigInt> PrimeFactorization::primes() const {
  std::vector<BigInt> out;
  out.reserve(factors_.size());
  for (const auto& [p, e] : factors_) out.push_back(p);
  return out;
}

BigInt PrimeFactorization::product() const {
  BigInt r(1);
  for (const auto& [p, e] : factors_) r *= pow(p, e);
  return r;
}

std::span<const std::uint32_t> small_primes() {
  static const std::vector<std::uint32_t> primes = sieve(kTrialBound);
  return primes;
}

const BigInt& primality_limit() {
  static const BigInt limit = BigInt::parse("3317044064679887385961981");
  return limit;
}

bool is_prime(const BigInt& n) {
  if (n >= primality_limit()) throw PrimalityOutOfRange(n.to_string());
  return is_prime_certified(n);
}

unsigned multiplicity(const BigInt& n, const BigInt& p) {
  if (n.is_zero()) throw ValuationUndefined();
  if (n.is_small() && p.is_small()) {
    std::int64_t m = *n.to_int64();
    std::int64_t q = *p.to_int64();
    unsigned k = 0;
    while (m % q == 0) {
      m /= q;
      ++k;
    }
    return k;
  }
  mpz_class m = n.to_mpz();
  return static_cast<unsigned>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.to_mpz().get_mpz_t()));
}

int valuation(const BigRat& x, const BigInt& p) {
  if (x.is_zero()) throw ValuationUndefined();
  if (p < BigInt(2) || !is_prime(p)) {
    throw std::invalid_argument(p.to_string() + " is not prime");
  }
  return static_cast<int>(multiplicity(x.num(), p)) - static_cast<int>(multiplicity(x.den(), p));
}

PrimeFactorization factorize(const BigInt& n, const FactorOptions& options) {
  if (n.is_zero()) throw std::invalid_argument("cannot factorize zero");
  PrimeFactorization::Map out;
  BigInt m = n.abs();

  auto certified_prime = [](const BigInt& v) {
    return v < primality_limit() && is_prime_certified(v);
  };

  bool early_checked = false;
  for (std::uint32_t p : small_primes()) {
    if (m.is_one()) break;
    if (auto small = m.to_int64()) {
      u64 v = static_cast<u64>(*small);
      if (u64(p) * p > v) {
        out[m] += 1;
        m = BigInt(1);
        break;
      }
      if (v % p == 0) {
        unsigned k = 0;
        do {
          v /= p;
          ++k;
        } while (v % p == 0);
        out[BigInt(p)] += k;
        m = BigInt(v);
      }
    } else {
      mpz_class z = m.to_mpz();
      if (mpz_divisible_ui_p(z.get_mpz_t(), p)) {
        mpz_class prime(p);
        unsigned k = static_cast<unsigned>(mpz_remove(z.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
        out[BigInt(p)] += k;
        m = BigInt(std::move(z));
      }
    }
    if (!early_checked && p >= kEarlyPrimalityCheck && !m.is_one()) {
      early_checked = true;
      if (certified_prime(m)) {
        out[m] += 1;
        m = BigInt(1);
        break;
      }
    }
  }

  if (!m.is_one()) {
    RhoSplitter splitter(options.rho_budget);
    std::vector<BigInt> pending{m};
    while (!pending.empty()) {
      BigInt c = std::move(pending.back());
      pending.pop_back();
      // Every cofactor here has no prime factor below 10^6.
      if (c < BigInt(std::int64_t{kTrialBound}) * BigInt(std::int64_t{kTrialBound}) || certified_prime(c)) {
        out[c] += 1;
        continue;
      }
      auto f = splitter.split(c);
      if (!f) {
        if (c >= primality_limit()) throw PrimalityOutOfRange(c.to_string());
        throw FactorizationIncomplete("rho budget exhausted on cofactor " + c.to_string());
      }
      pending.push_back(c / *f);
      pending.push_back(std::move(*f));
    }
  }
  return PrimeFactorization(std::move(out));
}

std::vector<BigInt> divisors(const PrimeFactorization& f) {
  std::vector<BigInt> out{BigInt(1)};
  for (const auto& [p, e] : f) {
    std::size_t base = out.size();
    BigInt power(1);
    for (unsigned k = 1; k <= e; ++k) {
      power *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ratdyn
