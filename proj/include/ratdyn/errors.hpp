#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratdyn {

// Base for all domain failures raised by the library. Argument-validation
// failures use std::invalid_argument so callers can treat them uniformly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// v_p(0) is +infinity; asking for it is always a caller bug.
class ValuationUndefined : public Error {
 public:
  ValuationUndefined() : Error("valuation undefined (infinite) for zero") {}
};

// Factorization gave up inside its iteration budget. Never a partial answer.
class FactorizationIncomplete : public Error {
 public:
  explicit FactorizationIncomplete(const std::string& what)
      : Error("factorization incomplete: " + what) {}
};

// The deterministic primality test is only certified below 3.3e24.
class PrimalityOutOfRange : public Error {
 public:
  explicit PrimalityOutOfRange(const std::string& n)
      : Error("primality test not certified for " + n + " (limit 3.3e24)") {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  // Zero-based offset into the input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// F and G share a projective root, so [F:G] is not a morphism.
class DegenerateMap : public Error {
 public:
  explicit DegenerateMap(const std::string& what)
      : Error("degenerate map: " + what) {}
};

// Magnitude comparison hit its precision ceiling without separating values.
class Indistinguishable : public Error {
 public:
  explicit Indistinguishable(const std::string& what)
      : Error("indistinguishable at precision: " + what) {}
};

}  // namespace ratdyn
