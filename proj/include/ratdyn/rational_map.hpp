#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ratdyn/bigint.hpp"
#include "ratdyn/factor.hpp"
#include "ratdyn/proj_point.hpp"

namespace ratdyn {

// Binary form c[0] X^n + c[1] X^(n-1) Y + ... + c[n] Y^n.
using BinaryForm = std::vector<BigInt>;

BigInt evaluate_form(const BinaryForm& form, const BigInt& x, const BigInt& y);

// A finite set S of places of Q: the archimedean place plus finitely many
// primes. |S| counts the archimedean place.
class PlaceSet {
 public:
  PlaceSet() = default;
  explicit PlaceSet(std::set<BigInt> finite_primes) : finite_(std::move(finite_primes)) {}

  bool contains(const BigInt& prime) const { return finite_.count(prime) != 0; }
  std::size_t size() const { return 1 + finite_.size(); }
  const std::set<BigInt>& finite_primes() const { return finite_; }
  PlaceSet joined(const std::set<BigInt>& more) const;
  // "inf" followed by the primes in ascending order.
  std::vector<std::string> labels() const;

  friend bool operator==(const PlaceSet&, const PlaceSet&) = default;

 private:
  std::set<BigInt> finite_;
};

// An endomorphism [F:G] of P^1 over Q given by two integer binary forms of
// the same degree d. The 2d+2 coefficients have content 1 and the first
// nonzero coefficient of G is positive, so the representation is unique.
class HomogPair {
 public:
  // Throws std::invalid_argument for mismatched or empty forms and
  // DegenerateMap when F and G share a projective root.
  HomogPair(BinaryForm f, BinaryForm g, std::string source = {});

  int degree() const { return static_cast<int>(f_.size()) - 1; }
  const BinaryForm& f() const { return f_; }
  const BinaryForm& g() const { return g_; }
  const BigInt& resultant() const { return resultant_; }
  // Original input text, when the pair came from the parser.
  const std::string& source() const { return source_; }
  // The dynamical theorems all need d >= 2; lower degrees are only parsed.
  bool below_degree_two() const { return degree() < 2; }
  std::string to_string() const;

  friend bool operator==(const HomogPair& a, const HomogPair& b) { return a.f_ == b.f_ && a.g_ == b.g_; }

 private:
  BinaryForm f_;
  BinaryForm g_;
  BigInt resultant_;
  std::string source_;
};

// Affine rational function in z ("z^2-29/16", "(z^2+1)/(2*z)") or an
// explicit pair "[X^2-Y^2 : Y^2]". Throws ParseError (with position) on
// syntax errors and DegenerateMap for constant or degenerate maps.
HomogPair parse_map(std::string_view text);

// Determinant of the 2d x 2d Sylvester matrix of two degree-d forms.
BigInt sylvester_resultant(const BinaryForm& f, const BinaryForm& g);
BigInt resultant(const HomogPair& pair);

struct ReductionProfile {
  BigInt resultant;
  std::set<BigInt> bad_primes;
  PlaceSet s_min;
};

ReductionProfile reduction_profile(const HomogPair& pair, const FactorOptions& options = {});

ProjPoint evaluate(const HomogPair& pair, const ProjPoint& point);

// W = F_X G_Y - F_Y G_X, a form of degree 2d-2.
BinaryForm wronskian(const HomogPair& pair);

// Rational zeros of the Wronskian, ascending. Throws std::invalid_argument
// for degree 1.
std::vector<ProjPoint> critical_points_rational(const HomogPair& pair);

// Rational projective roots of a nonzero binary form, ascending.
std::vector<ProjPoint> rational_roots(const BinaryForm& form);

}  // namespace ratdyn
