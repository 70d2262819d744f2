#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fewno/sparse_polynomial.hpp"

namespace fewno {

struct Literal {
  std::size_t var = 0;  // 1-based
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

struct Sat3Formula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;
};

// DIMACS CNF ("p cnf V C", clauses terminated by 0, 'c' comment lines).
// Every clause must have exactly three literals. Throws ParseError.
Sat3Formula parse_dimacs(std::string_view text);

using PolySystem = std::vector<SparsePolynomial>;

// X -> x, not X -> 1 - x, C or C' -> f + f' - f f', folded left to right.
SparsePolynomial clause_polynomial(const Clause& clause, std::size_t num_vars);

// (f_C1 - 1, ..., f_Ck - 1, x_1(1 - x_1), ..., x_n(1 - x_n))
PolySystem sat3_to_system(const Sat3Formula& phi);

bool satisfies(const Sat3Formula& phi, std::span<const bool> assignment);
// Exhaustive search, num_vars <= 24.
bool brute_force_satisfiable(const Sat3Formula& phi);
// Exhaustive search over {0,1}^n for a common root, n <= 24.
bool has_boolean_root(const PolySystem& system);

// Output of the normal form: variables are x_1..x_n followed by y_1..y_k;
// the first k equations define y_1..y_k in order, the rest are the
// rewritten inputs.
struct ShorNormalForm {
  PolySystem system;
  std::size_t original_vars = 0;
  std::size_t introduced = 0;
  std::vector<std::string> names;
};

// Every output polynomial is a linear trinomial (<= 3 terms, degree <= 1)
// or has <= 2 terms and total degree <= 2.
ShorNormalForm shor_normal_form(const PolySystem& system);

// Values of y_1..y_k for a point of the original variables.
std::vector<Rational> extend_root(const ShorNormalForm& snf, std::span<const Rational> x);

// Size counting only nonzero exponents: per term, bits of the coefficient
// plus bits+1 for every nonzero exponent entry.
std::size_t sparse_size(const SparsePolynomial& f);
std::size_t sparse_size(const PolySystem& system);

// Bound on sparse_size(output) / sparse_size(input) for shor_normal_form.
inline constexpr std::size_t kShorSizeFactor = 32;

// f_1^2 + ... + f_k^2 over the union of the variables.
SparsePolynomial sos_aggregate(const PolySystem& system);

// Term-map arithmetic shared by the gadgets.
SparsePolynomial add(const SparsePolynomial& f, const SparsePolynomial& g);
SparsePolynomial multiply(const SparsePolynomial& f, const SparsePolynomial& g);

}  // namespace fewno
