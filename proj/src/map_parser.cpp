// Recursive-descent parser for map input.
//
//   map     := '[' expr ':' expr ']' | expr
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | variable | '(' expr ')'
//
// The affine form uses the variable z and is evaluated as a rational
// function; the bracketed form uses X and Y and must give two homogeneous
// polynomials of one common degree.

#include <cctype>
#include <map>
#include <memory>
#include <utility>

#include "ratdyn/bigrat.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/rational_map.hpp"

namespace ratdyn {

namespace {

constexpr int kMaxDegree = 512;

enum class Tok { kNumber, kVariable, kOp, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::kNumber, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::isalpha(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::kVariable, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::string_view("+-*/^()[]:").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Tok::kOp, std::string(1, static_cast<char>(c)), i});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", i);
    }
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

struct Node {
  enum Kind { kNumber, kVariable, kAdd, kSub, kMul, kDiv, kNeg, kPow } kind;
  std::size_t pos = 0;
  BigInt number;
  std::string variable;
  unsigned long exponent = 0;
  std::unique_ptr<Node> lhs, rhs;
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek() const { return toks_[at_]; }
  bool accept(char op) {
    if (peek().kind == Tok::kOp && peek().text[0] == op) {
      ++at_;
      return true;
    }
    return false;
  }
  void expect(char op) {
    if (!accept(op)) throw ParseError(std::string("expected '") + op + "'" + found(), peek().pos);
  }
  void expect_end() {
    if (peek().kind != Tok::kEnd) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
  }

  NodePtr expr() {
    NodePtr n = term();
    while (true) {
      std::size_t pos = peek().pos;
      if (accept('+')) {
        n = binary(Node::kAdd, pos, std::move(n), term());
      } else if (accept('-')) {
        n = binary(Node::kSub, pos, std::move(n), term());
      } else {
        return n;
      }
    }
  }

 private:
  std::string found() const {
    return peek().kind == Tok::kEnd ? " but input ended" : " but found '" + peek().text + "'";
  }

  static NodePtr binary(Node::Kind kind, std::size_t pos, NodePtr a, NodePtr b) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->pos = pos;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr term() {
    NodePtr n = unary();
    while (true) {
      std::size_t pos = peek().pos;
      if (accept('*')) {
        n = binary(Node::kMul, pos, std::move(n), unary());
      } else if (accept('/')) {
        n = binary(Node::kDiv, pos, std::move(n), unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    std::size_t pos = peek().pos;
    if (accept('+')) return unary();
    if (accept('-')) {
      auto n = std::make_unique<Node>();
      n->kind = Node::kNeg;
      n->pos = pos;
      n->lhs = unary();
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    std::size_t pos = peek().pos;
    if (!accept('^')) return base;
    if (peek().kind != Tok::kNumber) throw ParseError("exponent must be a nonnegative integer" + found(), peek().pos);
    BigInt e = BigInt::parse(peek().text);
    if (e > BigInt(kMaxDegree)) throw ParseError("exponent too large", peek().pos);
    ++at_;
    auto n = std::make_unique<Node>();
    n->kind = Node::kPow;
    n->pos = pos;
    n->exponent = static_cast<unsigned long>(*e.to_int64());
    n->lhs = std::move(base);
    if (peek().kind == Tok::kOp && peek().text == "^") {
      throw ParseError("chained exponents need parentheses", peek().pos);
    }
    return n;
  }

  NodePtr primary() {
    const Token& t = peek();
    auto n = std::make_unique<Node>();
    n->pos = t.pos;
    if (t.kind == Tok::kNumber) {
      n->kind = Node::kNumber;
      n->number = BigInt::parse(t.text);
      ++at_;
      return n;
    }
    if (t.kind == Tok::kVariable) {
      n->kind = Node::kVariable;
      n->variable = t.text;
      ++at_;
      return n;
    }
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    throw ParseError("expected a number, variable or '('" + found(), t.pos);
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

// ---- univariate rational functions over Q -------------------------------

// Coefficients low to high; empty means zero.
using Poly = std::vector<BigRat>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly add(const Poly& a, const Poly& b, bool subtract = false) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    BigRat x = i < a.size() ? a[i] : BigRat(0);
    BigRat y = i < b.size() ? b[i] : BigRat(0);
    r[i] = subtract ? x - y : x + y;
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Quotient and remainder of a by nonzero b.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    BigRat c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly monic_gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    BigRat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

struct RatFunc {
  Poly num;
  Poly den{BigRat(1)};

  void reduce() {
    Poly g = monic_gcd(num, den);
    if (degree(g) > 0) {
      num = divmod(num, g).first;
      den = divmod(den, g).first;
    }
    if (num.empty()) den = Poly{BigRat(1)};
    if (std::max(degree(num), degree(den)) > kMaxDegree) throw std::length_error("degree too large");
  }
};

RatFunc eval_affine(const Node& n) {
  RatFunc r;
  switch (n.kind) {
    case Node::kNumber:
      if (!n.number.is_zero()) r.num = Poly{BigRat(n.number)};
      return r;
    case Node::kVariable:
      if (n.variable != "z") {
        throw ParseError("unknown variable '" + n.variable + "' (affine maps use z)", n.pos);
      }
      r.num = Poly{BigRat(0), BigRat(1)};
      return r;
    case Node::kNeg: {
      r = eval_affine(*n.lhs);
      for (auto& c : r.num) c = -c;
      return r;
    }
    case Node::kAdd:
    case Node::kSub: {
      RatFunc a = eval_affine(*n.lhs), b = eval_affine(*n.rhs);
      r.num = add(mul(a.num, b.den), mul(b.num, a.den), n.kind == Node::kSub);
      r.den = mul(a.den, b.den);
      break;
    }
    case Node::kMul: {
      RatFunc a = eval_affine(*n.lhs), b = eval_affine(*n.rhs);
      r.num = mul(a.num, b.num);
      r.den = mul(a.den, b.den);
      break;
    }
    case Node::kDiv: {
      RatFunc a = eval_affine(*n.lhs), b = eval_affine(*n.rhs);
      if (b.num.empty()) throw ParseError("division by an identically zero expression", n.pos);
      r.num = mul(a.num, b.den);
      r.den = mul(a.den, b.num);
      break;
    }
    case Node::kPow: {
      RatFunc base = eval_affine(*n.lhs);
      if (base.num.empty() && n.exponent == 0) throw ParseError("0^0 is undefined", n.pos);
      r.num = Poly{BigRat(1)};
      for (unsigned long i = 0; i < n.exponent; ++i) {
        r.num = mul(r.num, base.num);
        r.den = mul(r.den, base.den);
        if (std::max(degree(r.num), degree(r.den)) > kMaxDegree) throw ParseError("degree too large", n.pos);
      }
      break;
    }
  }
  try {
    r.reduce();
  } catch (const std::length_error&) {
    throw ParseError("degree too large", n.pos);
  }
  return r;
}

// ---- bivariate polynomials for the explicit form -------------------------

// (deg_X, deg_Y) -> coefficient.
using Poly2 = std::map<std::pair<int, int>, BigRat>;

void trim2(Poly2& p) {
  std::erase_if(p, [](const auto& kv) { return kv.second.is_zero(); });
}

Poly2 mul2(const Poly2& a, const Poly2& b, std::size_t pos) {
  Poly2 r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::pair<int, int> e{ea.first + eb.first, ea.second + eb.second};
      if (e.first + e.second > kMaxDegree) throw ParseError("degree too large", pos);
      r[e] += ca * cb;
    }
  }
  trim2(r);
  return r;
}

Poly2 eval_form(const Node& n) {
  Poly2 r;
  switch (n.kind) {
    case Node::kNumber:
      if (!n.number.is_zero()) r[{0, 0}] = BigRat(n.number);
      return r;
    case Node::kVariable:
      if (n.variable == "X") {
        r[{1, 0}] = BigRat(1);
      } else if (n.variable == "Y") {
        r[{0, 1}] = BigRat(1);
      } else {
        throw ParseError("unknown variable '" + n.variable + "' (homogeneous forms use X and Y)", n.pos);
      }
      return r;
    case Node::kNeg:
      r = eval_form(*n.lhs);
      for (auto& [e, c] : r) c = -c;
      return r;
    case Node::kAdd:
    case Node::kSub: {
      r = eval_form(*n.lhs);
      for (const auto& [e, c] : eval_form(*n.rhs)) r[e] += n.kind == Node::kSub ? -c : c;
      trim2(r);
      return r;
    }
    case Node::kMul:
      return mul2(eval_form(*n.lhs), eval_form(*n.rhs), n.pos);
    case Node::kDiv: {
      Poly2 a = eval_form(*n.lhs), b = eval_form(*n.rhs);
      if (b.empty()) throw ParseError("division by an identically zero expression", n.pos);
      if (b.size() != 1 || b.begin()->first != std::pair<int, int>{0, 0}) {
        throw ParseError("homogeneous forms may only be divided by constants", n.pos);
      }
      BigRat c = b.begin()->second;
      for (auto& [e, v] : a) v /= c;
      return a;
    }
    case Node::kPow: {
      Poly2 base = eval_form(*n.lhs);
      if (base.empty() && n.exponent == 0) throw ParseError("0^0 is undefined", n.pos);
      r[{0, 0}] = BigRat(1);
      for (unsigned long i = 0; i < n.exponent; ++i) r = mul2(r, base, n.pos);
      return r;
    }
  }
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) { return a / gcd(a, b) * b; }

// Scales rational coefficient vectors by the lcm of their denominators.
std::pair<BinaryForm, BinaryForm> clear_denominators(const std::vector<BigRat>& f, const std::vector<BigRat>& g) {
  BigInt l(1);
  for (const auto& c : f) l = lcm(l, c.den());
  for (const auto& c : g) l = lcm(l, c.den());
  BinaryForm fi, gi;
  for (const auto& c : f) fi.push_back(c.num() * (l / c.den()));
  for (const auto& c : g) gi.push_back(c.num() * (l / c.den()));
  return {std::move(fi), std::move(gi)};
}

HomogPair finish_affine(const RatFunc& r, std::string source) {
  const int d = std::max(degree(r.num), degree(r.den));
  if (d < 1) throw DegenerateMap("constant map has degree 0");
  std::vector<BigRat> f(d + 1), g(d + 1);
  // Coefficient of X^(d-i) Y^i is the coefficient of z^(d-i).
  for (int i = 0; i <= d; ++i) {
    int power = d - i;
    if (power <= degree(r.num)) f[i] = r.num[power];
    if (power <= degree(r.den)) g[i] = r.den[power];
  }
  auto [fi, gi] = clear_denominators(f, g);
  return HomogPair(std::move(fi), std::move(gi), std::move(source));
}

std::vector<BigRat> to_form(const Poly2& p, int d, std::size_t pos, const char* which) {
  std::vector<BigRat> out(d + 1);
  for (const auto& [e, c] : p) {
    if (e.first + e.second != d) {
      throw ParseError(std::string(which) + " is not homogeneous of degree " + std::to_string(d), pos);
    }
    out[e.second] = c;
  }
  return out;
}

int total_degree(const Poly2& p) {
  int d = -1;
  for (const auto& [e, c] : p) d = std::max(d, e.first + e.second);
  return d;
}

}  // namespace

HomogPair parse_map(std::string_view text) {
  std::vector<Token> tokens = tokenize(text);
  Parser parser(std::move(tokens));
  std::string source(text);
  if (parser.accept('[')) {
    std::size_t f_pos = parser.peek().pos;
    NodePtr f_node = parser.expr();
    parser.expect(':');
    std::size_t g_pos = parser.peek().pos;
    NodePtr g_node = parser.expr();
    parser.expect(']');
    parser.expect_end();
    Poly2 f = eval_form(*f_node), g = eval_form(*g_node);
    if (f.empty() && g.empty()) throw DegenerateMap("F and G are both zero");
    int d = std::max(total_degree(f), total_degree(g));
    if (d < 1) throw DegenerateMap("constant map has degree 0");
    auto [fi, gi] = clear_denominators(to_form(f, d, f_pos, "F"), to_form(g, d, g_pos, "G"));
    return HomogPair(std::move(fi), std::move(gi), std::move(source));
  }
  NodePtr root = parser.expr();
  parser.expect_end();
  return finish_affine(eval_affine(*root), std::move(source));
}

}  // namespace ratdyn
