#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fewno/types.hpp"

namespace fewno {

struct Term {
  ExponentVector exponents;
  Integer coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

// Ordered list of pairwise distinct integer points.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<ExponentVector> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  // Ambient dimension; 0 for an empty set.
  std::size_t ambient_dim() const { return points_.empty() ? 0 : points_.front().size(); }

  const ExponentVector& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<ExponentVector>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  PointSet subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<ExponentVector> points_;
};

// Integer-coefficient Laurent polynomial in x1..xn.
//
// Terms are kept in canonical order (lexicographic on exponent vectors),
// like terms are merged and zero coefficients dropped. The zero polynomial
// is not representable.
class SparsePolynomial {
 public:
  SparsePolynomial(std::size_t n, std::vector<Term> terms);

  std::size_t num_vars() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& operator[](std::size_t i) const { return terms_[i]; }

  bool is_laurent() const;  // some exponent is negative
  bool has_constant_term() const;

  // Multiplies by x^shift (shift may be negative).
  SparsePolynomial shifted(const ExponentVector& shift) const;
  SparsePolynomial negated() const;

  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

 private:
  std::size_t n_;
  std::vector<Term> terms_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar:
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := integer | [integer ['*']] factor ('*' factor)*
//   factor := 'x' index ['^' ['-'] integer]
// Whitespace between tokens is ignored. The variable count is the largest
// index seen, raised to min_vars (and to at least 1).
SparsePolynomial parse_polynomial(std::string_view text, std::size_t min_vars = 0);

// Canonical text form; parse_polynomial(to_string(f), f.num_vars()) == f.
std::string to_string(const SparsePolynomial& f);
// Same, with caller-supplied variable names (names.size() == num_vars()).
std::string to_string(const SparsePolynomial& f, std::span<const std::string> names);

PointSet support(const SparsePolynomial& f);

// Exact value at x. Throws std::domain_error when a coordinate with a
// negative exponent is zero.
Rational evaluate(const SparsePolynomial& f, std::span<const Rational> x);
// Integer-point evaluation; requires nonnegative exponents wherever x_i == 0
// and throws std::domain_error if the result is not an integer.
Integer evaluate_integer(const SparsePolynomial& f, std::span<const Integer> x);
int sign_at(const SparsePolynomial& f, std::span<const Rational> x);

// Bits needed for an integer: bitlength of |v| (1 for zero) plus one sign
// bit when v is negative.
std::size_t integer_bits(const Integer& v);
std::size_t integer_bits(Exponent v);

// Total binary size: integer_bits over every coefficient and every
// exponent entry.
std::size_t bit_size(const SparsePolynomial& f);

}  // namespace fewno
