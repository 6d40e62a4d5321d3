#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ratdyn/bigint.hpp"
#include "ratdyn/bigrat.hpp"

namespace ratdyn {

// Complete factorization of a nonzero integer's absolute value.
class PrimeFactorization {
 public:
  using Map = std::map<BigInt, unsigned>;

  PrimeFactorization() = default;
  explicit PrimeFactorization(Map factors) : factors_(std::move(factors)) {}

  // Exponent of p; zero when p does not divide.
  unsigned exponent(const BigInt& p) const;
  bool empty() const { return factors_.empty(); }
  std::size_t size() const { return factors_.size(); }
  std::vector<BigInt> primes() const;
  BigInt product() const;
  const Map& factors() const { return factors_; }
  Map::const_iterator begin() const { return factors_.begin(); }
  Map::const_iterator end() const { return factors_.end(); }

  friend bool operator==(const PrimeFactorization&, const PrimeFactorization&) = default;

 private:
  Map factors_;
};

struct FactorOptions {
  // Total Pollard-rho iterations allowed across all cofactors.
  std::uint64_t rho_budget = std::uint64_t{1} << 24;
};

// Upper limit (exclusive) of the certified deterministic primality test.
const BigInt& primality_limit();

// Deterministic strong-pseudoprime test. Throws PrimalityOutOfRange at or
// above primality_limit().
bool is_prime(const BigInt& n);

// Throws std::invalid_argument for n = 0, FactorizationIncomplete when the
// rho budget runs out, PrimalityOutOfRange for uncertifiable cofactors.
PrimeFactorization factorize(const BigInt& n, const FactorOptions& options = {});

// v_p(x) for nonzero rational x and prime p. Throws ValuationUndefined for
// x = 0 and std::invalid_argument when p is not prime.
int valuation(const BigRat& x, const BigInt& p);

// Multiplicity of a known prime p in nonzero n; no primality check.
unsigned multiplicity(const BigInt& n, const BigInt& p);

// All positive divisors, ascending.
std::vector<BigInt> divisors(const PrimeFactorization& f);

// Primes below 10^6, ascending.
std::span<const std::uint32_t> small_primes();

}  // namespace ratdyn
