#include "ratdyn/bounds.hpp"

#include <stdexcept>
#include <string>

namespace ratdyn {

namespace {

using M = BoundMagnitude;

M lit(long v) { return M::exact(BigInt(v)); }

void check(int d, int s) {
  if (d < 2) throw std::invalid_argument("degree must be at least 2, got " + std::to_string(d));
  if (s < 1) throw std::invalid_argument("|S| must be at least 1, got " + std::to_string(s));
}

M b_of(int s) { return M::exact(BigInt::pow2(16UL * static_cast<unsigned long>(s))); }

M c_of(int n, int s) {
  BigInt base = pow(BigInt(6 * n), static_cast<unsigned long>(3 * n));
  return M::exp(BigRat(base * BigInt(static_cast<long>(n) * s + 1 - n)));
}

M seven_pow(int s) { return M::exact(pow(BigInt(7), 4UL * static_cast<unsigned long>(s))); }

}  // namespace

UnitEquationBounds unit_equation_bounds(int n, int s) {
  if (n < 2) throw std::invalid_argument("n must be at least 2, got " + std::to_string(n));
  check(2, s);
  return {b_of(s), c_of(n, s)};
}

TailBounds tail_bounds(int d, int s) {
  check(d, s);
  const M b = b_of(s);
  const M c3 = c_of(3, s);
  const M dd = lit(d);
  const M dm1 = lit(d - 1);
  TailBounds out;
  out.l1 = dm1 * (lit(1) + dd * (lit(1) + b));
  out.l2 = M::max({(lit(2) * (c3 + lit(2)) + lit(1)) * dd + lit(1),
                   dm1 * (lit(1) + b * (b + c3 + lit(2) + lit(1)))});
  out.l3 = ((lit(1) + lit(3) * b) * b + lit(1)) * dm1;
  out.l4 = (c3 + lit(2) + lit(1)) * dm1;
  return out;
}

AggregateBounds aggregate_bounds(int d, int s) {
  check(d, s);
  const TailBounds tb = tail_bounds(d, s);
  const M b = b_of(s);
  const M dd = lit(d);
  AggregateBounds out;
  out.cv = M::sum({(lit(3) * b + lit(13)) * dd, lit(27) * b, c_of(5, s), lit(6) * c_of(3, s), lit(32)});
  out.t = lit(12) * seven_pow(s);
  out.tpla = lit(3) * seven_pow(s);
  out.fpla = M::pow2(BigInt(32 * s)) * dd + M::pow2(BigInt::pow2(77) * BigInt(s));
  out.l = M::max({out.t + out.cv, M::sum({tb.l4, lit(2) * tb.l2, lit(3)}), lit(3) * tb.l3 + lit(3)});
  out.q = M::max({out.t + out.cv, lit(3) * tb.l1});
  return out;
}

}  // namespace ratdyn
