#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "fewno/sparse_polynomial.hpp"
#include "fewno/types.hpp"

namespace fewno {

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);
  // Points become columns.
  static IntMatrix from_columns(const std::vector<ExponentVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Integer> row(std::size_t i) const;
  std::vector<Integer> column(std::size_t j) const;
  IntMatrix transpose() const;
  // Rows [r0, r1) and columns [c0, c1).
  IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& v);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

// U * M = H with U unimodular and H in row-echelon Hermite normal form:
// pivots positive, entries below each pivot zero, entries above each pivot in
// [0, pivot).
struct HermiteFactorization {
  IntMatrix U;
  IntMatrix H;
  std::size_t rank = 0;
};
HermiteFactorization hermite_factor(const IntMatrix& m);

// U * M * V = S with U, V unimodular and S diagonal, nonnegative, each
// diagonal entry dividing the next.
struct SmithFactorization {
  IntMatrix U;
  IntMatrix V;
  IntMatrix S;
  std::size_t rank = 0;
};
SmithFactorization smith_factor(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);
IntMatrix unimodular_inverse(const IntMatrix& u);

// Z-basis of the right kernel {v : M v = 0}, one vector per entry.
std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& m);

// Divides out the gcd and makes the first nonzero entry positive.
std::vector<Integer> primitive(std::vector<Integer> v);

// The relation vector of a circuit A: the generator m of
// {m : sum m_j = 0, sum m_j a_j = O}, gcd 1, first nonzero entry positive.
// Throws PreconditionError unless that lattice has rank one and every entry
// of m is nonzero.
std::vector<Integer> circuit_relation(const PointSet& a);

// f(y^U): under x_j = prod_i y_i^{U(i,j)} each exponent vector a becomes U a.
SparsePolynomial monomial_substitute(const SparsePolynomial& f, const IntMatrix& u);

}  // namespace fewno
