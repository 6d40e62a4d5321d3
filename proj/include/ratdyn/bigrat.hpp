#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ratdyn/bigint.hpp"

namespace ratdyn {

// Exact rational in lowest terms with a positive denominator.
class BigRat {
 public:
  BigRat() = default;
  BigRat(BigInt n) : num_(std::move(n)) {}  // NOLINT(google-explicit-constructor)
  template <std::integral T>
  BigRat(T n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  // Throws std::domain_error for a zero denominator.
  BigRat(BigInt num, BigInt den);

  // "a", "-a", "a/b". Throws std::invalid_argument.
  static BigRat parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_.is_one(); }
  std::string to_string() const;
  mpq_class to_mpq() const;

  BigRat operator-() const;
  BigRat& operator+=(const BigRat& o);
  BigRat& operator-=(const BigRat& o);
  BigRat& operator*=(const BigRat& o);
  BigRat& operator/=(const BigRat& o);

  friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
  friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
  friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
  friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }

  friend bool operator==(const BigRat&, const BigRat&) = default;
  friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b);

 private:
  void normalize();

  BigInt num_{0};
  BigInt den_{1};
};

std::ostream& operator<<(std::ostream& os, const BigRat& v);

}  // namespace ratdyn
