#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fewno {

using Integer = mpz_class;
using Rational = mpq_class;

// Exponents are machine integers; coefficients and matrix entries are not.
using Exponent = std::int64_t;
using ExponentVector = std::vector<Exponent>;

// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when adaptive-precision refinement exceeds its bit budget.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int sign_of(const Integer& v) { return sgn(v); }
inline int sign_of(const Rational& v) { return sgn(v); }

Integer to_integer(Exponent e);

// Narrowing conversion that throws std::overflow_error when out of range.
Exponent to_exponent(const Integer& v);

}  // namespace fewno
