#pragma once

#include "ratdyn/magnitude.hpp"

namespace ratdyn {

struct UnitEquationBounds {
  // Solutions of the S-unit equation in two variables.
  BoundMagnitude b;
  // Nondegenerate solutions in n variables.
  BoundMagnitude c;
};

struct TailBounds {
  BoundMagnitude l1;
  BoundMagnitude l2;
  BoundMagnitude l3;
  BoundMagnitude l4;
};

struct AggregateBounds {
  BoundMagnitude cv;
  BoundMagnitude t;
  // Periodic points of a map with good reduction outside S: 3 * 7^(4s).
  BoundMagnitude tpla;
  // Points in a periodic-like set: 2^(32s) d + 2^(2^77 s).
  BoundMagnitude fpla;
  BoundMagnitude l;
  BoundMagnitude q;
};

// B(s) = 2^(16s) and C(n, s) = e^((6n)^(3n) (ns + 1 - n)). Both take
// s = |S| including the archimedean place. Throws std::invalid_argument
// unless n >= 2 and s >= 1.
UnitEquationBounds unit_equation_bounds(int n, int s);

// Throws std::invalid_argument unless d >= 2 and s >= 1.
TailBounds tail_bounds(int d, int s);
AggregateBounds aggregate_bounds(int d, int s);

}  // namespace ratdyn
