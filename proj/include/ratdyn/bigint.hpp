#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace ratdyn {

// Arbitrary-precision signed integer.
//
// Values whose magnitude fits in 63 bits live inline as an int64 and take
// overflow-checked fast paths; anything larger is promoted to GMP. The
// representation is canonical: a value that fits inline is never stored as
// an mpz, so equality and hashing can compare representations directly.
class BigInt {
 public:
  BigInt() = default;

  template <std::signed_integral T>
  BigInt(T v) {  // NOLINT(google-explicit-constructor)
    assign(static_cast<std::int64_t>(v));
  }

  template <std::unsigned_integral T>
  BigInt(T v) {  // NOLINT(google-explicit-constructor)
    if (static_cast<std::uint64_t>(v) <= static_cast<std::uint64_t>(kSmallMax)) {
      rep_ = static_cast<std::int64_t>(v);
    } else {
      mpz_class z;
      mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(v));
      rep_ = std::move(z);
    }
  }

  explicit BigInt(const mpz_class& z);
  explicit BigInt(mpz_class&& z);

  // Decimal with optional leading sign. Throws std::invalid_argument.
  static BigInt parse(std::string_view text);
  static BigInt pow2(unsigned long exponent);

  int sign() const;
  bool is_zero() const { return is_small() && small() == 0; }
  bool is_one() const { return is_small() && small() == 1; }
  bool is_small() const { return std::holds_alternative<std::int64_t>(rep_); }
  bool is_even() const;
  std::optional<std::int64_t> to_int64() const;
  double to_double() const;
  mpz_class to_mpz() const;
  std::string to_string() const;
  // Number of bits in |x|; zero for x = 0.
  std::size_t bit_length() const;
  // Largest k with 2^k | x; x must be nonzero.
  std::size_t trailing_zero_bits() const;
  BigInt abs() const;
  BigInt shifted_left(unsigned long bits) const;
  BigInt shifted_right(unsigned long bits) const;  // floor for x >= 0
  std::size_t hash() const;

  BigInt operator-() const;
  BigInt& operator+=(const BigInt& o);
  BigInt& operator-=(const BigInt& o);
  BigInt& operator*=(const BigInt& o);
  BigInt& operator/=(const BigInt& o);  // truncating
  BigInt& operator%=(const BigInt& o);  // sign follows the dividend

  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
  friend BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
  friend BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b);

  friend BigInt gcd(const BigInt& a, const BigInt& b);
  friend BigInt pow(const BigInt& base, unsigned long exponent);
  // Floor division and the matching nonnegative remainder for positive m.
  friend BigInt floor_div(const BigInt& a, const BigInt& b);
  friend BigInt mod_floor(const BigInt& a, const BigInt& m);

 private:
  static constexpr std::int64_t kSmallMax = INT64_MAX;

  std::int64_t small() const { return std::get<std::int64_t>(rep_); }
  const mpz_class& big() const { return std::get<mpz_class>(rep_); }
  void assign(std::int64_t v);
  void assign(mpz_class&& z);

  std::variant<std::int64_t, mpz_class> rep_{std::int64_t{0}};
};

std::ostream& operator<<(std::ostream& os, const BigInt& v);

}  // namespace ratdyn

template <>
struct std::hash<ratdyn::BigInt> {
  std::size_t operator()(const ratdyn::BigInt& v) const noexcept { return v.hash(); }
};
