#include "ratdyn/rational_map.hpp"

#include <algorithm>
#include <stdexcept>

#include "ratdyn/errors.hpp"

namespace ratdyn {

namespace {

std::string format_form(const BinaryForm& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::string out;
  for (int i = 0; i <= n; ++i) {
    if (c[i].is_zero()) continue;
    int xe = n - i, ye = i;
    BigInt mag = c[i].abs();
    out += out.empty() ? (c[i].sign() < 0 ? "-" : "") : (c[i].sign() < 0 ? " - " : " + ");
    bool monomial = xe > 0 || ye > 0;
    if (!mag.is_one() || !monomial) out += mag.to_string();
    auto power = [&](const char* v, int e) {
      if (e == 0) return;
      if (!out.empty() && out.back() != ' ' && out.back() != '-') out += "*";
      out += v;
      if (e > 1) out += "^" + std::to_string(e);
    };
    power("X", xe);
    power("Y", ye);
  }
  return out.empty() ? "0" : out;
}

BinaryForm derivative_x(const BinaryForm& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return BinaryForm{BigInt(0)};
  BinaryForm d(n);
  for (int i = 0; i < n; ++i) d[i] = c[i] * BigInt(n - i);
  return d;
}

BinaryForm derivative_y(const BinaryForm& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return BinaryForm{BigInt(0)};
  BinaryForm d(n);
  for (int j = 0; j < n; ++j) d[j] = c[j + 1] * BigInt(j + 1);
  return d;
}

BinaryForm multiply(const BinaryForm& a, const BinaryForm& b) {
  BinaryForm out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

BigInt evaluate_form(const BinaryForm& form, const BigInt& x, const BigInt& y) {
  // r_i = r_{i-1} x + c_i y^i accumulates sum c_i x^(n-i) y^i.
  BigInt r = form.front();
  BigInt ypow(1);
  for (std::size_t i = 1; i < form.size(); ++i) {
    ypow *= y;
    r = r * x + form[i] * ypow;
  }
  return r;
}

PlaceSet PlaceSet::joined(const std::set<BigInt>& more) const {
  std::set<BigInt> all = finite_;
  all.insert(more.begin(), more.end());
  return PlaceSet(std::move(all));
}

std::vector<std::string> PlaceSet::labels() const {
  std::vector<std::string> out{"inf"};
  for (const auto& p : finite_) out.push_back(p.to_string());
  return out;
}

HomogPair::HomogPair(BinaryForm f, BinaryForm g, std::string source)
    : f_(std::move(f)), g_(std::move(g)), source_(std::move(source)) {
  if (f_.empty() || f_.size() != g_.size()) {
    throw std::invalid_argument("F and G must be forms of the same degree");
  }
  if (f_.size() < 2) throw std::invalid_argument("map degree must be at least 1");
  BigInt content(0);
  for (const auto& c : f_) content = gcd(content, c);
  for (const auto& c : g_) content = gcd(content, c);
  if (content.is_zero()) throw DegenerateMap("F and G are both zero");
  auto first_g = std::find_if(g_.begin(), g_.end(), [](const BigInt& c) { return !c.is_zero(); });
  if (first_g != g_.end() && first_g->sign() < 0) content = -content;
  if (!content.is_one()) {
    for (auto& c : f_) c /= content;
    for (auto& c : g_) c /= content;
  }
  resultant_ = sylvester_resultant(f_, g_);
  if (resultant_.is_zero()) {
    throw DegenerateMap("resultant of " + to_string() + " is zero (F and G share a root)");
  }
}

std::string HomogPair::to_string() const { return "[" + format_form(f_) + " : " + format_form(g_) + "]"; }

BigInt sylvester_resultant(const BinaryForm& f, const BinaryForm& g) {
  if (f.size() != g.size() || f.size() < 2) {
    throw std::invalid_argument("resultant needs two forms of equal positive degree");
  }
  const std::size_t d = f.size() - 1;
  const std::size_t n = 2 * d;
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, BigInt(0)));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k <= d; ++k) {
      m[r][r + k] = f[k];
      m[d + r][r + k] = g[k];
    }
  }
  // Fraction-free Bareiss elimination.
  int sign = 1;
  BigInt prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return BigInt(0);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = BigInt(0);
    }
    prev = m[k][k];
  }
  return sign < 0 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

BigInt resultant(const HomogPair& pair) { return pair.resultant(); }

ReductionProfile reduction_profile(const HomogPair& pair, const FactorOptions& options) {
  ReductionProfile profile;
  profile.resultant = pair.resultant();
  for (const auto& [p, e] : factorize(profile.resultant, options)) profile.bad_primes.insert(p);
  profile.s_min = PlaceSet(profile.bad_primes);
  return profile;
}

ProjPoint evaluate(const HomogPair& pair, const ProjPoint& point) {
  return ProjPoint::from_integers(evaluate_form(pair.f(), point.x(), point.y()),
                                  evaluate_form(pair.g(), point.x(), point.y()));
}

BinaryForm wronskian(const HomogPair& pair) {
  BinaryForm a = multiply(derivative_x(pair.f()), derivative_y(pair.g()));
  BinaryForm b = multiply(derivative_y(pair.f()), derivative_x(pair.g()));
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

std::vector<ProjPoint> rational_roots(const BinaryForm& form) {
  const std::size_t n = form.size() - 1;
  auto lo = std::find_if(form.begin(), form.end(), [](const BigInt& c) { return !c.is_zero(); });
  if (lo == form.end()) throw std::invalid_argument("zero form has every point as a root");
  auto hi = std::find_if(form.rbegin(), form.rend(), [](const BigInt& c) { return !c.is_zero(); });
  const std::size_t lo_i = static_cast<std::size_t>(lo - form.begin());
  const std::size_t hi_i = n - static_cast<std::size_t>(hi - form.rbegin());

  std::set<ProjPoint> roots;
  if (lo_i > 0) roots.insert(ProjPoint::infinity());
  if (hi_i < n) roots.insert(ProjPoint::from_integers(BigInt(0), BigInt(1)));
  if (hi_i > lo_i) {
    // Remaining roots are p/q with p | c[hi] and q | c[lo].
    auto numerators = divisors(factorize(form[hi_i]));
    auto denominators = divisors(factorize(form[lo_i]));
    for (const auto& q : denominators) {
      for (const auto& p : numerators) {
        if (!gcd(p, q).is_one()) continue;
        for (const BigInt& signed_p : {p, -p}) {
          if (evaluate_form(form, signed_p, q).is_zero()) {
            roots.insert(ProjPoint::from_integers(signed_p, q));
          }
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

std::vector<ProjPoint> critical_points_rational(const HomogPair& pair) {
  if (pair.below_degree_two()) throw std::invalid_argument("no critical points: map has degree 1");
  return rational_roots(wronskian(pair));
}

}  // namespace ratdyn
