#include "ratdyn/bigint.hpp"

#include <bit>
#include <cctype>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace ratdyn {

namespace {

mpz_class to_mpz_si(std::int64_t v) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
  return z;
}

std::uint64_t uabs(std::int64_t v) {
  return v < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

std::uint64_t binary_gcd(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  do {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

}  // namespace

BigInt::BigInt(const mpz_class& z) { assign(mpz_class(z)); }
BigInt::BigInt(mpz_class&& z) { assign(std::move(z)); }

void BigInt::assign(std::int64_t v) {
  if (v == INT64_MIN) {
    rep_ = to_mpz_si(v);
  } else {
    rep_ = v;
  }
}

void BigInt::assign(mpz_class&& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) {
    long v = mpz_get_si(z.get_mpz_t());
    if (v != INT64_MIN) {
      rep_ = static_cast<std::int64_t>(v);
      return;
    }
  }
  rep_ = std::move(z);
}

BigInt BigInt::parse(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw std::invalid_argument("empty integer literal");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw std::invalid_argument("invalid integer literal '" + std::string(text) + "'");
    }
  }
  mpz_class z(std::string(text.substr(i)), 10);
  if (negative) z = -z;
  return BigInt(std::move(z));
}

BigInt BigInt::pow2(unsigned long exponent) {
  mpz_class z;
  mpz_setbit(z.get_mpz_t(), exponent);
  return BigInt(std::move(z));
}

int BigInt::sign() const {
  if (is_small()) return (small() > 0) - (small() < 0);
  return mpz_sgn(big().get_mpz_t());
}

bool BigInt::is_even() const {
  if (is_small()) return (small() & 1) == 0;
  return mpz_even_p(big().get_mpz_t());
}

std::optional<std::int64_t> BigInt::to_int64() const {
  if (is_small()) return small();
  return std::nullopt;
}

double BigInt::to_double() const {
  if (is_small()) return static_cast<double>(small());
  return big().get_d();
}

mpz_class BigInt::to_mpz() const {
  if (is_small()) return to_mpz_si(small());
  return big();
}

std::string BigInt::to_string() const {
  if (is_small()) return std::to_string(small());
  return big().get_str(10);
}

std::size_t BigInt::bit_length() const {
  if (is_small()) return static_cast<std::size_t>(std::bit_width(uabs(small())));
  return mpz_sizeinbase(big().get_mpz_t(), 2);
}

std::size_t BigInt::trailing_zero_bits() const {
  if (is_zero()) throw std::invalid_argument("trailing_zero_bits of zero");
  if (is_small()) return static_cast<std::size_t>(std::countr_zero(uabs(small())));
  return mpz_scan1(big().get_mpz_t(), 0);
}

BigInt BigInt::abs() const {
  if (is_small()) return BigInt(small() < 0 ? -small() : small());
  return BigInt(mpz_class(::abs(big())));
}

BigInt BigInt::shifted_left(unsigned long bits) const {
  mpz_class z;
  mpz_mul_2exp(z.get_mpz_t(), to_mpz().get_mpz_t(), bits);
  return BigInt(std::move(z));
}

BigInt BigInt::shifted_right(unsigned long bits) const {
  mpz_class z;
  mpz_fdiv_q_2exp(z.get_mpz_t(), to_mpz().get_mpz_t(), bits);
  return BigInt(std::move(z));
}

std::size_t BigInt::hash() const {
  if (is_small()) return std::hash<std::int64_t>{}(small());
  mpz_srcptr z = big().get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
  std::size_t limbs = mpz_size(z);
  for (std::size_t i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z, i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

BigInt BigInt::operator-() const {
  if (is_small()) return BigInt(-small());
  return BigInt(mpz_class(-big()));
}

BigInt& BigInt::operator+=(const BigInt& o) {
  if (is_small() && o.is_small()) {
    std::int64_t r;
    if (!__builtin_add_overflow(small(), o.small(), &r)) {
      assign(r);
      return *this;
    }
  }
  assign(mpz_class(to_mpz() + o.to_mpz()));
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) {
  if (is_small() && o.is_small()) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small(), o.small(), &r)) {
      assign(r);
      return *this;
    }
  }
  assign(mpz_class(to_mpz() - o.to_mpz()));
  return *this;
}

BigInt& BigInt::operator*=(const BigInt& o) {
  if (is_small() && o.is_small()) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small(), o.small(), &r)) {
      assign(r);
      return *this;
    }
  }
  assign(mpz_class(to_mpz() * o.to_mpz()));
  return *this;
}

BigInt& BigInt::operator/=(const BigInt& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (is_small() && o.is_small()) {
    assign(small() / o.small());
    return *this;
  }
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), to_mpz().get_mpz_t(), o.to_mpz().get_mpz_t());
  assign(std::move(q));
  return *this;
}

BigInt& BigInt::operator%=(const BigInt& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (is_small() && o.is_small()) {
    assign(small() % o.small());
    return *this;
  }
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), to_mpz().get_mpz_t(), o.to_mpz().get_mpz_t());
  assign(std::move(r));
  return *this;
}

bool operator==(const BigInt& a, const BigInt& b) {
  if (a.is_small() != b.is_small()) return false;
  if (a.is_small()) return a.small() == b.small();
  return a.big() == b.big();
}

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
  if (a.is_small() && b.is_small()) return a.small() <=> b.small();
  int c = mpz_cmp(a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return c <=> 0;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  if (a.is_small() && b.is_small()) {
    return BigInt(binary_gcd(uabs(a.small()), uabs(b.small())));
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return BigInt(std::move(g));
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.to_mpz().get_mpz_t(), exponent);
  return BigInt(std::move(r));
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return BigInt(std::move(q));
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  if (m.sign() <= 0) throw std::domain_error("modulus must be positive");
  if (a.is_small() && m.is_small()) {
    std::int64_t r = a.small() % m.small();
    return BigInt(r < 0 ? r + m.small() : r);
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), m.to_mpz().get_mpz_t());
  return BigInt(std::move(r));
}

std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

}  // namespace ratdyn
