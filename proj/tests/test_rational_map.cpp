#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ratdyn/errors.hpp"
#include "ratdyn/rational_map.hpp"

using namespace ratdyn;

namespace {

BinaryForm form(std::initializer_list<long> c) {
  BinaryForm out;
  for (long v : c) out.emplace_back(v);
  return out;
}

ProjPoint pt(long x, long y) { return ProjPoint::from_integers(BigInt(x), BigInt(y)); }

// Cofactor expansion along the first row; exponential but fine for 2d <= 8.
BigInt naive_det(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  BigInt total(0);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(row);
    }
    BigInt term = m[0][col] * naive_det(minor);
    total += col % 2 == 0 ? term : -term;
  }
  return total;
}

BigInt naive_resultant(const BinaryForm& f, const BinaryForm& g) {
  const std::size_t d = f.size() - 1;
  std::vector<std::vector<BigInt>> m(2 * d, std::vector<BigInt>(2 * d, BigInt(0)));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k <= d; ++k) {
      m[r][r + k] = f[k];
      m[d + r][r + k] = g[k];
    }
  }
  return naive_det(m);
}

}  // namespace

TEST_CASE("parse_map examples") {
  HomogPair a = parse_map("z^2-1");
  CHECK(a.degree() == 2);
  CHECK(a.f() == form({1, 0, -1}));
  CHECK(a.g() == form({0, 0, 1}));

  HomogPair b = parse_map("z^2-29/16");
  CHECK(b.f() == form({16, 0, -29}));
  CHECK(b.g() == form({0, 0, 16}));

  HomogPair c = parse_map("(z^2+1)/(2*z)");
  CHECK(c.f() == form({1, 0, 1}));
  CHECK(c.g() == form({0, 2, 0}));
  CHECK(c.to_string() == "[X^2 + Y^2 : 2*X*Y]");
}

TEST_CASE("parse_map accepts explicit forms and implicit structure") {
  CHECK(parse_map("[X^2 - Y^2 : Y^2]") == parse_map("z^2-1"));
  CHECK(parse_map("[2*X^2 - 2*Y^2 : 2*Y^2]") == parse_map("z^2-1"));
  CHECK(parse_map("(z-1)*(z+1)") == parse_map("z^2-1"));
  CHECK(parse_map("z*z - 1/1") == parse_map("z^2-1"));
  CHECK(parse_map("-(1 - z^2)") == parse_map("z^2-1"));
  CHECK(parse_map("3/(z^2)") == HomogPair(form({0, 0, 3}), form({1, 0, 0})));
  // Shared factors are cancelled before homogenizing.
  HomogPair r = parse_map("(z^2-1)/(z-1)");
  CHECK(r.degree() == 1);
  CHECK(r.below_degree_two());
}

TEST_CASE("parse_map errors") {
  CHECK_THROWS_AS(parse_map("z^2+"), ParseError);
  CHECK_THROWS_AS(parse_map("z^^2"), ParseError);
  CHECK_THROWS_AS(parse_map("(z+1"), ParseError);
  CHECK_THROWS_AS(parse_map("z/0"), ParseError);
  CHECK_THROWS_AS(parse_map("5"), DegenerateMap);
  CHECK_THROWS_AS(parse_map("[X^2 : X*Y]"), DegenerateMap);
  CHECK_THROWS_AS(parse_map("[X^2 : Y]"), ParseError);
  try {
    parse_map("z^2 + $");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);  // zero-based offset of the dollar sign
  }
}

TEST_CASE("resultant examples") {
  CHECK(HomogPair(form({1, 0, 0}), form({0, 0, 1})).resultant() == BigInt(1));
  CHECK(parse_map("z^2-29/16").resultant() == BigInt(65536));
  CHECK(parse_map("z^2-2").resultant() == BigInt(1));
}

TEST_CASE("property: Sylvester resultant matches cofactor expansion") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const std::size_t d = 1 + rng() % 4;
    BinaryForm f, g;
    for (std::size_t k = 0; k <= d; ++k) {
      f.emplace_back(static_cast<long>(rng() % 21) - 10);
      g.emplace_back(static_cast<long>(rng() % 21) - 10);
    }
    CHECK(sylvester_resultant(f, g) == naive_resultant(f, g));
  }
}

TEST_CASE("property: resultant scales by lambda^(2d) before normalization") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 200; ++i) {
    BinaryForm f, g;
    for (int k = 0; k <= 2; ++k) {
      f.emplace_back(static_cast<long>(rng() % 15) - 7);
      g.emplace_back(static_cast<long>(rng() % 15) - 7);
    }
    BigInt r = sylvester_resultant(f, g);
    if (r.is_zero()) continue;
    long lambda = static_cast<long>(rng() % 5) + 2;
    BinaryForm fs = f, gs = g;
    for (auto& c : fs) c *= BigInt(lambda);
    for (auto& c : gs) c *= BigInt(lambda);
    CHECK(sylvester_resultant(fs, gs) == r * pow(BigInt(lambda), 4));
    CHECK(reduction_profile(HomogPair(fs, gs)).bad_primes == reduction_profile(HomogPair(f, g)).bad_primes);
  }
}

TEST_CASE("reduction_profile examples") {
  auto a = reduction_profile(parse_map("z^2-29/16"));
  CHECK(a.bad_primes == std::set<BigInt>{BigInt(2)});
  CHECK(a.s_min.size() == 2);
  CHECK(a.s_min.labels() == std::vector<std::string>{"inf", "2"});
  auto b = reduction_profile(parse_map("z^2-2"));
  CHECK(b.bad_primes.empty());
  CHECK(b.s_min.size() == 1);
  CHECK(reduction_profile(parse_map("z^2")).bad_primes.empty());
}

TEST_CASE("evaluate examples") {
  HomogPair m = parse_map("z^2-1");
  CHECK(evaluate(m, pt(2, 1)) == pt(3, 1));
  CHECK(evaluate(m, ProjPoint::infinity()) == ProjPoint::infinity());
  CHECK(evaluate(parse_map("z^2-29/16"), pt(3, 4)) == pt(-5, 4));
  CHECK(evaluate(parse_map("1/z"), pt(0, 1)) == ProjPoint::infinity());
}

TEST_CASE("property: evaluate agrees with rational arithmetic") {
  std::mt19937_64 rng(41);
  HomogPair m = parse_map("(z^3 - 2*z + 5/3)/(z^2 + 7)");
  for (int i = 0; i < 500; ++i) {
    BigRat z(BigInt(static_cast<long>(rng() % 401) - 200), BigInt(static_cast<long>(rng() % 50) + 1));
    BigRat expect = (z * z * z - BigRat(2) * z + BigRat::parse("5/3")) / (z * z + BigRat(7));
    ProjPoint got = evaluate(m, ProjPoint::affine(z));
    CHECK(got == ProjPoint::affine(expect));
    CHECK(gcd(got.x(), got.y()).is_one());
    CHECK(got.y().sign() >= 0);
  }
}

TEST_CASE("critical points examples") {
  CHECK(wronskian(parse_map("z^2")) == form({0, 4, 0}));
  CHECK(critical_points_rational(parse_map("z^2")) == std::vector<ProjPoint>{pt(0, 1), ProjPoint::infinity()});
  CHECK(critical_points_rational(parse_map("(z^2+1)/(2*z)")) == std::vector<ProjPoint>{pt(-1, 1), pt(1, 1)});
  CHECK(wronskian(parse_map("z^2-29/16")) == form({0, 1024, 0}));
  CHECK(critical_points_rational(parse_map("z^2-29/16")) ==
        std::vector<ProjPoint>{pt(0, 1), ProjPoint::infinity()});
  CHECK_THROWS_AS(critical_points_rational(parse_map("2*z+1")), std::invalid_argument);
}

TEST_CASE("property: critical points are exact Wronskian zeros") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    BinaryForm f, g;
    for (int k = 0; k <= 3; ++k) {
      f.emplace_back(static_cast<long>(rng() % 11) - 5);
      g.emplace_back(static_cast<long>(rng() % 11) - 5);
    }
    if (sylvester_resultant(f, g).is_zero()) continue;
    HomogPair m(f, g);
    BinaryForm w = wronskian(m);
    auto crit = critical_points_rational(m);
    for (const auto& p : crit) CHECK(evaluate_form(w, p.x(), p.y()).is_zero());
    // Every small rational root must be found.
    for (long y = 1; y <= 12; ++y) {
      for (long x = -12; x <= 12; ++x) {
        if (std::gcd(x, y) != 1) continue;
        if (evaluate_form(w, BigInt(x), BigInt(y)).is_zero()) {
          CHECK(std::find(crit.begin(), crit.end(), pt(x, y)) != crit.end());
        }
      }
    }
  }
}
