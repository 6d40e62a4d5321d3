#include "ratdyn/bigrat.hpp"

#include <ostream>
#include <stdexcept>

namespace ratdyn {

BigRat::BigRat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void BigRat::normalize() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ /= g;
    den_ /= g;
  }
}

BigRat BigRat::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRat(BigInt::parse(text));
  BigInt den = BigInt::parse(text.substr(slash + 1));
  if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return BigRat(BigInt::parse(text.substr(0, slash)), std::move(den));
}

std::string BigRat::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

mpq_class BigRat::to_mpq() const {
  mpq_class q(num_.to_mpz(), den_.to_mpz());
  return q;
}

BigRat BigRat::operator-() const {
  BigRat r = *this;
  r.num_ = -r.num_;
  return r;
}

BigRat& BigRat::operator+=(const BigRat& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

BigRat& BigRat::operator-=(const BigRat& o) { return *this += -o; }

BigRat& BigRat::operator*=(const BigRat& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BigRat& BigRat::operator/=(const BigRat& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  BigInt n = num_ * o.den_;
  BigInt d = den_ * o.num_;
  num_ = std::move(n);
  den_ = std::move(d);
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

std::ostream& operator<<(std::ostream& os, const BigRat& v) { return os << v.to_string(); }

}  // namespace ratdyn
