#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "ratdyn/bigint.hpp"
#include "ratdyn/bigrat.hpp"
#include "ratdyn/factor.hpp"

namespace ratdyn {

// A point of P^1(Q) in canonical coordinates [x:y]: gcd(|x|,|y|) = 1 and
// either y > 0, or y = 0 and x = 1. Since Z is a PID these coordinates are
// normalized at every prime simultaneously.
class ProjPoint {
 public:
  // The point at infinity.
  ProjPoint() : x_(1), y_(0) {}

  // Throws std::invalid_argument when both coordinates vanish.
  static ProjPoint canonicalize(const BigRat& x, const BigRat& y);
  static ProjPoint from_integers(BigInt x, BigInt y);
  static ProjPoint affine(const BigRat& z) { return canonicalize(z, BigRat(1)); }
  static ProjPoint infinity() { return ProjPoint(); }
  // Caller guarantees the canonical invariants; used by the orbit kernel.
  static ProjPoint from_canonical(BigInt x, BigInt y);

  // "inf", "a", "a/b" or "[x:y]". Throws std::invalid_argument.
  static ProjPoint parse(std::string_view text);

  const BigInt& x() const { return x_; }
  const BigInt& y() const { return y_; }
  bool is_infinity() const { return y_.is_zero(); }
  // Naive multiplicative height max(|x|, |y|).
  BigInt height() const;
  // Affine value x/y; throws std::domain_error at infinity.
  BigRat value() const;

  // "inf" or the affine rational.
  std::string to_string() const;
  std::string to_projective_string() const;

  std::size_t hash() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  // Ascending by affine value, infinity last.
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b);

 private:
  ProjPoint(BigInt x, BigInt y) : x_(std::move(x)), y_(std::move(y)) {}

  BigInt x_;
  BigInt y_;
};

// x_P * y_Q - x_Q * y_P for canonical coordinates.
BigInt cross(const ProjPoint& p, const ProjPoint& q);

// A p-adic logarithmic distance: a nonnegative integer or infinity.
class Distance {
 public:
  static Distance infinite() { return Distance(-1); }
  static Distance finite(std::int64_t v) { return Distance(v); }

  bool is_infinite() const { return value_ < 0; }
  // Throws std::logic_error when infinite.
  std::int64_t value() const;
  std::string to_string() const;

  friend bool operator==(const Distance&, const Distance&) = default;
  friend std::strong_ordering operator<=>(const Distance& a, const Distance& b);

 private:
  explicit Distance(std::int64_t v) : value_(v) {}
  std::int64_t value_;
};

// The primes where two distinct points have positive distance, with values.
struct DistanceSupport {
  PrimeFactorization entries;

  // Distance at p; zero for every prime absent from entries.
  std::int64_t at(const BigInt& p) const { return entries.exponent(p); }
  friend bool operator==(const DistanceSupport&, const DistanceSupport&) = default;
};

// delta_p(P, Q) = v_p(x_P y_Q - x_Q y_P). Throws std::invalid_argument when p
// is not prime.
Distance log_distance(const ProjPoint& p, const ProjPoint& q, const BigInt& prime);

// Same as log_distance for a prime the caller has already certified.
Distance log_distance_unchecked(const ProjPoint& p, const ProjPoint& q, const BigInt& prime);

// Throws std::invalid_argument when P = Q (distance infinite everywhere).
DistanceSupport distance_support(const ProjPoint& p, const ProjPoint& q,
                                 const FactorOptions& options = {});

}  // namespace ratdyn

template <>
struct std::hash<ratdyn::ProjPoint> {
  std::size_t operator()(const ratdyn::ProjPoint& p) const noexcept { return p.hash(); }
};
