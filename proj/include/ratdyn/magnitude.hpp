#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ratdyn/bigint.hpp"
#include "ratdyn/bigrat.hpp"

namespace ratdyn {

// A nonnegative real number built from integers, e^k (k rational) and
// 2^t by sums, products and maxima. Immutable; copies share structure.
class BoundMagnitude {
 public:
  enum class Kind { kExact, kExp, kPow2, kSum, kProd, kMax };

  // Zero.
  BoundMagnitude();

  // Throws std::invalid_argument for negative values.
  static BoundMagnitude exact(const BigInt& value);
  // e^ln_value; throws std::invalid_argument for negative ln_value.
  static BoundMagnitude exp(const BigRat& ln_value);
  // 2^exponent with a possibly enormous exponent.
  static BoundMagnitude pow2(const BigInt& exponent);
  static BoundMagnitude sum(std::vector<BoundMagnitude> terms);
  static BoundMagnitude prod(std::vector<BoundMagnitude> factors);
  static BoundMagnitude max(std::vector<BoundMagnitude> branches);

  Kind kind() const;
  // kExact only.
  const BigInt& exact_value() const;
  // kExp only.
  const BigRat& ln_value() const;
  // kPow2 only.
  const BigInt& pow2_exponent() const;
  // kSum, kProd, kMax.
  const std::vector<BoundMagnitude>& children() const;

  // Expression form, e.g. "max(65536 + e^198359290368, 7)".
  std::string expression() const;

  friend BoundMagnitude operator+(const BoundMagnitude& a, const BoundMagnitude& b);
  friend BoundMagnitude operator*(const BoundMagnitude& a, const BoundMagnitude& b);

 private:
  struct Node;
  explicit BoundMagnitude(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

BoundMagnitude operator+(const BoundMagnitude& a, const BigInt& b);
BoundMagnitude operator*(const BigInt& a, const BoundMagnitude& b);

enum class Ordering { kLess, kEqual, kGreater };
const char* to_string(Ordering ordering);

constexpr unsigned long kDefaultMaxPrecision = 1UL << 14;

// Values are normalized to a sum of terms c * 2^t * e^k with distinct k;
// by Lindemann-Weierstrass two magnitudes are equal exactly when their
// normal forms coincide. Otherwise the sign of the difference is found by
// interval arithmetic on logarithms with precision doubling. Throws
// Indistinguishable when max_precision_bits does not separate them.
Ordering magnitude_compare(const BoundMagnitude& a, const BoundMagnitude& b,
                           unsigned long max_precision_bits = kDefaultMaxPrecision);

// Rigorous enclosure [lo, hi] of ln m with dyadic endpoints. Throws
// std::domain_error for m = 0.
struct LogInterval {
  BigRat lo;
  BigRat hi;
};
LogInterval ln_interval(const BoundMagnitude& m, unsigned long precision_bits = 128);

// floor(log10 m) + 1; exact for integer values below the forcing limit and
// within one otherwise. Zero has one digit.
BigInt digit_count(const BoundMagnitude& m, unsigned long max_precision_bits = kDefaultMaxPrecision);

constexpr long kForceDigitLimit = 1000000;

// The integer value when m is an integer of at most digit_limit digits.
std::optional<BigInt> force_exact(const BoundMagnitude& m, long digit_limit = kForceDigitLimit);

// Exact integer when forceable, else a sum of terms such as
// "4*e^198359290368 + 11 (≈8.6e10 digits)".
std::string render(const BoundMagnitude& m);

}  // namespace ratdyn
