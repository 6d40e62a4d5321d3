#include "ratdyn/magnitude.hpp"

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <tuple>

#include "ratdyn/errors.hpp"

namespace ratdyn {

struct BoundMagnitude::Node {
  Kind kind;
  BigInt value;
  BigRat ln;
  std::vector<BoundMagnitude> children;
};

BoundMagnitude::BoundMagnitude() : BoundMagnitude(exact(BigInt(0))) {}

BoundMagnitude::BoundMagnitude(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

BoundMagnitude BoundMagnitude::exact(const BigInt& value) {
  if (value.sign() < 0) throw std::invalid_argument("magnitudes are nonnegative");
  return BoundMagnitude(std::make_shared<const Node>(Node{Kind::kExact, value, {}, {}}));
}

BoundMagnitude BoundMagnitude::exp(const BigRat& ln_value) {
  if (ln_value.sign() < 0) throw std::invalid_argument("exponent of e must be nonnegative");
  return BoundMagnitude(std::make_shared<const Node>(Node{Kind::kExp, {}, ln_value, {}}));
}

BoundMagnitude BoundMagnitude::pow2(const BigInt& exponent) {
  if (exponent.sign() < 0) throw std::invalid_argument("exponent of 2 must be nonnegative");
  return BoundMagnitude(std::make_shared<const Node>(Node{Kind::kPow2, exponent, {}, {}}));
}

namespace {

void require_children(const std::vector<BoundMagnitude>& v) {
  if (v.empty()) throw std::invalid_argument("sum, product and max need at least one operand");
}

}  // namespace

BoundMagnitude BoundMagnitude::sum(std::vector<BoundMagnitude> terms) {
  require_children(terms);
  return BoundMagnitude(std::make_shared<const Node>(Node{Kind::kSum, {}, {}, std::move(terms)}));
}

BoundMagnitude BoundMagnitude::prod(std::vector<BoundMagnitude> factors) {
  require_children(factors);
  return BoundMagnitude(std::make_shared<const Node>(Node{Kind::kProd, {}, {}, std::move(factors)}));
}

BoundMagnitude BoundMagnitude::max(std::vector<BoundMagnitude> branches) {
  require_children(branches);
  return BoundMagnitude(std::make_shared<const Node>(Node{Kind::kMax, {}, {}, std::move(branches)}));
}

BoundMagnitude::Kind BoundMagnitude::kind() const { return node_->kind; }

const BigInt& BoundMagnitude::exact_value() const {
  if (node_->kind != Kind::kExact) throw std::logic_error("not an exact magnitude");
  return node_->value;
}

const BigRat& BoundMagnitude::ln_value() const {
  if (node_->kind != Kind::kExp) throw std::logic_error("not an exponential magnitude");
  return node_->ln;
}

const BigInt& BoundMagnitude::pow2_exponent() const {
  if (node_->kind != Kind::kPow2) throw std::logic_error("not a power-of-two magnitude");
  return node_->value;
}

const std::vector<BoundMagnitude>& BoundMagnitude::children() const { return node_->children; }

std::string BoundMagnitude::expression() const {
  auto join = [&](const char* open, const char* sep) {
    std::string out = open;
    for (std::size_t i = 0; i < node_->children.size(); ++i) {
      if (i > 0) out += sep;
      out += node_->children[i].expression();
    }
    return out + ")";
  };
  switch (node_->kind) {
    case Kind::kExact:
      return node_->value.to_string();
    case Kind::kExp:
      return "e^(" + node_->ln.to_string() + ")";
    case Kind::kPow2:
      return "2^(" + node_->value.to_string() + ")";
    case Kind::kSum:
      return join("(", " + ");
    case Kind::kProd:
      return join("(", " * ");
    case Kind::kMax:
      return join("max(", ", ");
  }
  return {};
}

BoundMagnitude operator+(const BoundMagnitude& a, const BoundMagnitude& b) { return BoundMagnitude::sum({a, b}); }
BoundMagnitude operator*(const BoundMagnitude& a, const BoundMagnitude& b) { return BoundMagnitude::prod({a, b}); }
BoundMagnitude operator+(const BoundMagnitude& a, const BigInt& b) { return a + BoundMagnitude::exact(b); }
BoundMagnitude operator*(const BigInt& a, const BoundMagnitude& b) { return BoundMagnitude::exact(a) * b; }

const char* to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::kLess:
      return "LESS";
    case Ordering::kEqual:
      return "EQUAL";
    case Ordering::kGreater:
      return "GREATER";
  }
  return "?";
}

namespace {

// Normal form: for each exponent k of e, the dyadic coefficient as blocks
// c * 2^t (c odd) sorted by t, any two blocks separated by at least kGap
// zero bits and no block containing such a run. This is unique per value.
struct Block {
  BigInt t;
  BigInt c;
  friend bool operator==(const Block&, const Block&) = default;
};
using Blocks = std::vector<Block>;
using Poly = std::map<BigRat, Blocks>;

constexpr unsigned long kGap = 64;

unsigned long small_shift(const BigInt& v) {
  auto s = v.to_int64();
  if (!s || *s < 0) throw std::logic_error("block shift out of range");
  return static_cast<unsigned long>(*s);
}

void split_block(const Block& b, Blocks& out) {
  mpz_class c = b.c.to_mpz();
  const mp_bitcnt_t len = mpz_sizeinbase(c.get_mpz_t(), 2);
  mp_bitcnt_t start = 0;
  mp_bitcnt_t pos = 0;
  auto emit = [&](mp_bitcnt_t end) {
    mpz_class piece;
    mpz_fdiv_q_2exp(piece.get_mpz_t(), c.get_mpz_t(), start);
    mpz_fdiv_r_2exp(piece.get_mpz_t(), piece.get_mpz_t(), end - start);
    out.push_back({b.t + BigInt(static_cast<std::uint64_t>(start)), BigInt(std::move(piece))});
  };
  while (true) {
    mp_bitcnt_t zero = mpz_scan0(c.get_mpz_t(), pos);
    if (zero >= len) break;
    mp_bitcnt_t one = mpz_scan1(c.get_mpz_t(), zero);
    if (one - zero >= kGap) {
      emit(zero);
      start = one;
    }
    pos = one;
  }
  emit(len);
}

Blocks canonical(Blocks blocks) {
  bool merged = true;
  while (merged) {
    merged = false;
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.t < b.t; });
    Blocks joined;
    for (auto& b : blocks) {
      if (!joined.empty()) {
        Block& last = joined.back();
        BigInt end = last.t + BigInt(static_cast<std::uint64_t>(last.c.bit_length()));
        if (b.t - end < BigInt(kGap)) {
          last.c += b.c.shifted_left(small_shift(b.t - last.t));
          merged = true;
          continue;
        }
      }
      joined.push_back(std::move(b));
    }
    blocks.clear();
    for (auto& b : joined) {
      std::size_t tz = b.c.trailing_zero_bits();
      Block stripped{b.t + BigInt(static_cast<std::uint64_t>(tz)), b.c.shifted_right(tz)};
      split_block(stripped, blocks);
    }
  }
  return blocks;
}

Poly poly_add(Poly a, const Poly& b) {
  for (const auto& [k, blocks] : b) {
    Blocks& dst = a[k];
    dst.insert(dst.end(), blocks.begin(), blocks.end());
    dst = canonical(std::move(dst));
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ka, ba] : a) {
    for (const auto& [kb, bb] : b) {
      Blocks& dst = out[ka + kb];
      for (const auto& x : ba) {
        for (const auto& y : bb) dst.push_back({x.t + y.t, x.c * y.c});
      }
    }
  }
  for (auto& [k, blocks] : out) blocks = canonical(std::move(blocks));
  return out;
}

struct Term {
  BigRat k;
  BigInt t;
  BigInt c;
  friend bool operator==(const Term&, const Term&) = default;
};

bool term_less(const Term& a, const Term& b) {
  if (a.k != b.k) return a.k < b.k;
  if (a.t != b.t) return a.t < b.t;
  return a.c < b.c;
}

std::vector<Term> terms_of(const Poly& p) {
  std::vector<Term> out;
  for (const auto& [k, blocks] : p) {
    for (const auto& b : blocks) out.push_back({k, b.t, b.c});
  }
  return out;
}

// RAII MPFR value.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

void widen_exponent_range() {
  thread_local bool done = false;
  if (done) return;
  mpfr_set_emin(mpfr_get_emin_min());
  mpfr_set_emax(mpfr_get_emax_max());
  done = true;
}

struct Interval {
  Real lo;
  Real hi;
  explicit Interval(mpfr_prec_t prec) : lo(prec), hi(prec) {}
};

// Enclosure of ln(c * 2^t * e^k).
Interval term_log(const Term& term, mpfr_prec_t prec) {
  Interval out(prec);
  Real a(prec), b(prec);
  const mpz_class c = term.c.to_mpz();
  mpfr_set_z(a.get(), c.get_mpz_t(), MPFR_RNDD);
  mpfr_log(out.lo.get(), a.get(), MPFR_RNDD);
  mpfr_set_z(a.get(), c.get_mpz_t(), MPFR_RNDU);
  mpfr_log(out.hi.get(), a.get(), MPFR_RNDU);
  if (!term.t.is_zero()) {
    const mpz_class t = term.t.to_mpz();
    for (mpfr_rnd_t r : {MPFR_RNDD, MPFR_RNDU}) {
      mpfr_const_log2(a.get(), r);
      mpfr_set_z(b.get(), t.get_mpz_t(), r);
      mpfr_mul(a.get(), a.get(), b.get(), r);
      mpfr_ptr dst = r == MPFR_RNDD ? out.lo.get() : out.hi.get();
      mpfr_add(dst, dst, a.get(), r);
    }
  }
  if (!term.k.is_zero()) {
    const mpq_class k = term.k.to_mpq();
    for (mpfr_rnd_t r : {MPFR_RNDD, MPFR_RNDU}) {
      mpfr_set_q(a.get(), k.get_mpq_t(), r);
      mpfr_ptr dst = r == MPFR_RNDD ? out.lo.get() : out.hi.get();
      mpfr_add(dst, dst, a.get(), r);
    }
  }
  return out;
}

// Enclosure of ln of a nonempty sum of terms.
Interval sum_log(const std::vector<Term>& terms, mpfr_prec_t prec) {
  std::vector<Interval> parts;
  parts.reserve(terms.size());
  for (const auto& t : terms) parts.push_back(term_log(t, prec));
  Real m(prec);
  mpfr_set(m.get(), parts[0].lo.get(), MPFR_RNDN);
  for (auto& p : parts) mpfr_max(m.get(), m.get(), p.lo.get(), MPFR_RNDN);

  Interval out(prec);
  Real s_lo(prec), s_hi(prec), x(prec);
  mpfr_set_zero(s_lo.get(), 1);
  mpfr_set_zero(s_hi.get(), 1);
  for (auto& p : parts) {
    mpfr_sub(x.get(), p.lo.get(), m.get(), MPFR_RNDD);
    mpfr_exp(x.get(), x.get(), MPFR_RNDD);
    mpfr_add(s_lo.get(), s_lo.get(), x.get(), MPFR_RNDD);
    mpfr_sub(x.get(), p.hi.get(), m.get(), MPFR_RNDU);
    mpfr_exp(x.get(), x.get(), MPFR_RNDU);
    mpfr_add(s_hi.get(), s_hi.get(), x.get(), MPFR_RNDU);
  }
  mpfr_log(x.get(), s_lo.get(), MPFR_RNDD);
  mpfr_add(out.lo.get(), m.get(), x.get(), MPFR_RNDD);
  mpfr_log(x.get(), s_hi.get(), MPFR_RNDU);
  mpfr_add(out.hi.get(), m.get(), x.get(), MPFR_RNDU);
  return out;
}

BigRat to_rat(mpfr_srcptr x) {
  mpz_class z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  BigInt n{std::move(z)};
  if (e >= 0) return BigRat(n.shifted_left(static_cast<unsigned long>(e)));
  return BigRat(n, BigInt::pow2(static_cast<unsigned long>(-e)));
}

BigInt floor_of(mpfr_srcptr x) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), x, MPFR_RNDD);
  return BigInt(std::move(z));
}

Ordering compare_terms(const std::vector<Term>& a, const std::vector<Term>& b, unsigned long max_prec) {
  if (a.empty() && b.empty()) return Ordering::kEqual;
  if (a.empty()) return Ordering::kLess;
  if (b.empty()) return Ordering::kGreater;
  widen_exponent_range();
  for (unsigned long prec = 128;; prec *= 2) {
    prec = std::min(prec, max_prec);
    Interval ia = sum_log(a, static_cast<mpfr_prec_t>(prec));
    Interval ib = sum_log(b, static_cast<mpfr_prec_t>(prec));
    if (mpfr_less_p(ia.hi.get(), ib.lo.get())) return Ordering::kLess;
    if (mpfr_greater_p(ia.lo.get(), ib.hi.get())) return Ordering::kGreater;
    if (prec >= max_prec) {
      throw Indistinguishable("magnitudes not separated at " + std::to_string(prec) + " bits");
    }
  }
}

Poly normalize(const BoundMagnitude& m, unsigned long max_prec);

Ordering compare_polys(const Poly& a, const Poly& b, unsigned long max_prec) {
  if (a == b) return Ordering::kEqual;
  // Identical terms cancel in the difference.
  std::vector<Term> ta = terms_of(a), tb = terms_of(b), ra, rb;
  std::sort(ta.begin(), ta.end(), term_less);
  std::sort(tb.begin(), tb.end(), term_less);
  std::set_difference(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(ra), term_less);
  std::set_difference(tb.begin(), tb.end(), ta.begin(), ta.end(), std::back_inserter(rb), term_less);
  return compare_terms(ra, rb, max_prec);
}

Poly normalize(const BoundMagnitude& m, unsigned long max_prec) {
  using Kind = BoundMagnitude::Kind;
  switch (m.kind()) {
    case Kind::kExact: {
      if (m.exact_value().is_zero()) return {};
      return Poly{{BigRat(0), canonical({Block{BigInt(0), m.exact_value()}})}};
    }
    case Kind::kExp:
      return Poly{{m.ln_value(), Blocks{Block{BigInt(0), BigInt(1)}}}};
    case Kind::kPow2:
      return Poly{{BigRat(0), Blocks{Block{m.pow2_exponent(), BigInt(1)}}}};
    case Kind::kSum: {
      Poly out;
      for (const auto& c : m.children()) out = poly_add(std::move(out), normalize(c, max_prec));
      return out;
    }
    case Kind::kProd: {
      Poly out = normalize(m.children()[0], max_prec);
      for (std::size_t i = 1; i < m.children().size(); ++i) out = poly_mul(out, normalize(m.children()[i], max_prec));
      return out;
    }
    case Kind::kMax: {
      Poly best = normalize(m.children()[0], max_prec);
      for (std::size_t i = 1; i < m.children().size(); ++i) {
        Poly next = normalize(m.children()[i], max_prec);
        if (compare_polys(next, best, max_prec) == Ordering::kGreater) best = std::move(next);
      }
      return best;
    }
  }
  return {};
}

bool integer_valued(const Poly& p) { return p.empty() || (p.size() == 1 && p.begin()->first.is_zero()); }

// Number of decimal digits of a positive integer.
BigInt exact_digits(const BigInt& v) {
  if (v.is_zero()) return BigInt(1);
  mpz_class z = v.to_mpz();
  std::size_t n = mpz_sizeinbase(z.get_mpz_t(), 10);
  mpz_class ten;
  mpz_ui_pow_ui(ten.get_mpz_t(), 10, n - 1);
  if (z < ten) --n;
  return BigInt(static_cast<std::uint64_t>(n));
}

std::optional<BigInt> force_poly(const Poly& p, long digit_limit) {
  if (!integer_valued(p)) return std::nullopt;
  if (p.empty()) return BigInt(0);
  const Blocks& blocks = p.begin()->second;
  const Block& top = blocks.back();
  // 10^L has more than 3.32 L bits.
  BigInt bits = top.t + BigInt(static_cast<std::uint64_t>(top.c.bit_length()));
  if (bits > BigInt(digit_limit) * BigInt(10) / BigInt(3) + BigInt(4)) return std::nullopt;
  BigInt v(0);
  for (const auto& b : blocks) v += b.c.shifted_left(small_shift(b.t));
  if (exact_digits(v) > BigInt(digit_limit)) return std::nullopt;
  return v;
}

std::string scientific(const BigInt& v) {
  std::string s = v.to_string();
  if (s.size() <= 6) return s;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", std::stod(s.substr(0, 3)) / 100.0);
  std::string mant = buf;
  std::size_t exp10 = s.size() - 1;
  if (mant == "10.0") {
    mant = "1.0";
    ++exp10;
  }
  return mant + "e" + std::to_string(exp10);
}

}  // namespace

Ordering magnitude_compare(const BoundMagnitude& a, const BoundMagnitude& b, unsigned long max_precision_bits) {
  return compare_polys(normalize(a, max_precision_bits), normalize(b, max_precision_bits), max_precision_bits);
}

LogInterval ln_interval(const BoundMagnitude& m, unsigned long precision_bits) {
  Poly p = normalize(m, kDefaultMaxPrecision);
  if (p.empty()) throw std::domain_error("ln of zero");
  widen_exponent_range();
  Interval iv = sum_log(terms_of(p), static_cast<mpfr_prec_t>(std::max(precision_bits, 16UL)));
  return {to_rat(iv.lo.get()), to_rat(iv.hi.get())};
}

std::optional<BigInt> force_exact(const BoundMagnitude& m, long digit_limit) {
  return force_poly(normalize(m, kDefaultMaxPrecision), digit_limit);
}

BigInt digit_count(const BoundMagnitude& m, unsigned long max_precision_bits) {
  Poly p = normalize(m, max_precision_bits);
  if (auto v = force_poly(p, kForceDigitLimit)) return exact_digits(*v);
  widen_exponent_range();
  const std::vector<Term> terms = terms_of(p);
  for (unsigned long prec = 128;; prec *= 2) {
    prec = std::min(prec, max_precision_bits);
    const auto mp = static_cast<mpfr_prec_t>(prec);
    Interval iv = sum_log(terms, mp);
    Real ln10(mp), lo(mp), hi(mp);
    // ln m >= 0 here, so the lower end divides by an upper bound of ln 10.
    mpfr_set_ui(ln10.get(), 10, MPFR_RNDN);
    mpfr_log(ln10.get(), ln10.get(), MPFR_RNDU);
    mpfr_div(lo.get(), iv.lo.get(), ln10.get(), MPFR_RNDD);
    mpfr_set_ui(ln10.get(), 10, MPFR_RNDN);
    mpfr_log(ln10.get(), ln10.get(), MPFR_RNDD);
    mpfr_div(hi.get(), iv.hi.get(), ln10.get(), MPFR_RNDU);
    BigInt flo = floor_of(lo.get());
    if (flo == floor_of(hi.get()) || prec >= max_precision_bits) return flo + BigInt(1);
  }
}

std::string render(const BoundMagnitude& m) {
  Poly p = normalize(m, kDefaultMaxPrecision);
  if (auto v = force_poly(p, kForceDigitLimit)) return v->to_string();
  std::vector<Term> terms = terms_of(p);
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return term_less(b, a); });
  std::string out;
  for (const auto& term : terms) {
    std::vector<std::string> parts;
    if (term.t < BigInt(64)) {
      BigInt coeff = term.c.shifted_left(small_shift(term.t));
      if (!coeff.is_one() || term.k.is_zero()) parts.push_back(coeff.to_string());
    } else {
      if (!term.c.is_one()) parts.push_back(term.c.to_string());
      parts.push_back("2^" + term.t.to_string());
    }
    if (!term.k.is_zero()) {
      parts.push_back(term.k.is_integer() ? "e^" + term.k.to_string() : "e^(" + term.k.to_string() + ")");
    }
    if (!out.empty()) out += " + ";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
  }
  return out + " (≈" + scientific(digit_count(m)) + " digits)";
}

}  // namespace ratdyn
