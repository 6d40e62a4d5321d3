#include "ratdyn/proj_point.hpp"

#include <cctype>
#include <stdexcept>

namespace ratdyn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

ProjPoint ProjPoint::canonicalize(const BigRat& x, const BigRat& y) {
  if (x.is_zero() && y.is_zero()) {
    throw std::invalid_argument("[0:0] is not a point of the projective line");
  }
  // Clear denominators: [x:y] = [xn*yd : yn*xd].
  return from_integers(x.num() * y.den(), y.num() * x.den());
}

ProjPoint ProjPoint::from_integers(BigInt x, BigInt y) {
  if (x.is_zero() && y.is_zero()) {
    throw std::invalid_argument("[0:0] is not a point of the projective line");
  }
  if (y.is_zero()) return ProjPoint();
  BigInt g = gcd(x, y);
  if (!g.is_one()) {
    x /= g;
    y /= g;
  }
  if (y.sign() < 0) {
    x = -x;
    y = -y;
  }
  return ProjPoint(std::move(x), std::move(y));
}

ProjPoint ProjPoint::from_canonical(BigInt x, BigInt y) { return ProjPoint(std::move(x), std::move(y)); }

ProjPoint ProjPoint::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "inf" || s == "oo" || s == "infinity") return ProjPoint();
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw std::invalid_argument("unterminated projective point '" + std::string(text) + "'");
    std::string_view body = s.substr(1, s.size() - 2);
    auto colon = body.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("projective point needs ':' in '" + std::string(text) + "'");
    }
    return canonicalize(BigRat::parse(trim(body.substr(0, colon))), BigRat::parse(trim(body.substr(colon + 1))));
  }
  return affine(BigRat::parse(s));
}

BigInt ProjPoint::height() const {
  BigInt ax = x_.abs();
  return ax < y_ ? y_ : ax;
}

BigRat ProjPoint::value() const {
  if (is_infinity()) throw std::domain_error("point at infinity has no affine value");
  return BigRat(x_, y_);
}

std::string ProjPoint::to_string() const {
  if (is_infinity()) return "inf";
  if (y_.is_one()) return x_.to_string();
  return x_.to_string() + "/" + y_.to_string();
}

std::string ProjPoint::to_projective_string() const {
  return "[" + x_.to_string() + ":" + y_.to_string() + "]";
}

std::size_t ProjPoint::hash() const {
  std::size_t h = x_.hash();
  return h ^ (y_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
  if (a.is_infinity() || b.is_infinity()) {
    return static_cast<int>(a.is_infinity()) <=> static_cast<int>(b.is_infinity());
  }
  if (a.y_ == b.y_) return a.x_ <=> b.x_;
  return a.x_ * b.y_ <=> b.x_ * a.y_;
}

BigInt cross(const ProjPoint& p, const ProjPoint& q) { return p.x() * q.y() - q.x() * p.y(); }

std::int64_t Distance::value() const {
  if (is_infinite()) throw std::logic_error("infinite distance has no finite value");
  return value_;
}

std::string Distance::to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

std::strong_ordering operator<=>(const Distance& a, const Distance& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  return a.value_ <=> b.value_;
}

Distance log_distance_unchecked(const ProjPoint& p, const ProjPoint& q, const BigInt& prime) {
  BigInt c = cross(p, q);
  if (c.is_zero()) return Distance::infinite();
  return Distance::finite(multiplicity(c, prime));
}

Distance log_distance(const ProjPoint& p, const ProjPoint& q, const BigInt& prime) {
  if (prime < BigInt(2) || !is_prime(prime)) {
    throw std::invalid_argument(prime.to_string() + " is not prime");
  }
  return log_distance_unchecked(p, q, prime);
}

DistanceSupport distance_support(const ProjPoint& p, const ProjPoint& q, const FactorOptions& options) {
  BigInt c = cross(p, q);
  if (c.is_zero()) {
    throw std::invalid_argument("support undefined: " + p.to_string() +
                                " coincides with itself (distance infinite everywhere)");
  }
  return DistanceSupport{factorize(c, options)};
}

}  // namespace ratdyn
