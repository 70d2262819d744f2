#include "fewno/int_lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace fewno {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw PreconditionError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw PreconditionError("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<ExponentVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw PreconditionError("column has wrong length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = to_integer(cols[j][i]);
  }
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
  return std::vector<Integer>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<Integer> IntMatrix::column(std::size_t j) const {
  std::vector<Integer> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
  IntMatrix b(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
  return b;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix product: dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& v) {
  if (a.cols_ != v.size()) throw PreconditionError("matrix-vector product: dimension mismatch");
  std::vector<Integer> r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << (*this)(i, j).get_str();
    out << ']';
  }
  out << ']';
  return out.str();
}

namespace {

// Bareiss forward elimination in place; returns rank and records the sign of
// the row permutation.
std::size_t bareiss(IntMatrix& a, int& perm_sign) {
  perm_sign = 1;
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      a.swap_rows(p, r);
      perm_sign = -perm_sign;
    }
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        Integer t = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// row_a <- s*row_a + t*row_b, row_b <- u*row_a + v*row_b (simultaneously).
void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                  const Integer& u, const Integer& v) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer x = m(a, j), y = m(b, j);
    m(a, j) = s * x + t * y;
    m(b, j) = u * x + v * y;
  }
}

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += q * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  IntMatrix a = m;
  int s;
  if (bareiss(a, s) < a.rows()) return 0;
  return s * a(a.rows() - 1, a.cols() - 1);
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  int s;
  return bareiss(a, s);
}

HermiteFactorization hermite_factor(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    std::size_t p = r;
    while (p < h.rows() && h(p, c) == 0) ++p;
    if (p == h.rows()) continue;
    h.swap_rows(p, r);
    u.swap_rows(p, r);
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      Integer a = h(r, c), b = h(i, c), g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer uu = -b / g, vv = a / g;
      combine_rows(h, r, i, s, t, uu, vv);
      combine_rows(u, r, i, s, t, uu, vv);
    }
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      add_row_multiple(h, i, r, -q);
      add_row_multiple(u, i, r, -q);
    }
    ++r;
  }
  return {std::move(u), std::move(h), r};
}

SmithFactorization smith_factor(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t k = std::min(m.rows(), m.cols());
  std::size_t rnk = 0;
  for (std::size_t t = 0; t < k; ++t) {
    while (true) {
      // smallest nonzero magnitude in the trailing block becomes the pivot
      std::size_t pi = s.rows(), pj = s.cols();
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j)
          if (s(i, j) != 0 && (pi == s.rows() || mpz_cmpabs(s(i, j).get_mpz_t(), s(pi, pj).get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == s.rows()) break;
      s.swap_rows(t, pi);
      u.swap_rows(t, pi);
      s.swap_cols(t, pj);
      v.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        Integer q = floor_div(s(i, t), s(t, t));
        add_row_multiple(s, i, t, -q);
        add_row_multiple(u, i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        Integer q = floor_div(s(t, j), s(t, t));
        add_col_multiple(s, j, t, -q);
        add_col_multiple(v, j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = s.rows();
      for (std::size_t i = t + 1; i < s.rows() && bad == s.rows(); ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == s.rows()) break;
      add_row_multiple(s, t, bad, 1);
      add_row_multiple(u, t, bad, 1);
    }
    if (s(t, t) == 0) break;
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
    ++rnk;
  }
  return {std::move(u), std::move(v), std::move(s), rnk};
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  return abs(determinant(m)) == 1;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (!is_unimodular(u)) throw PreconditionError("matrix is not unimodular");
  auto hf = hermite_factor(u);
  // The Hermite form of a unimodular matrix is the identity.
  if (hf.H != IntMatrix::identity(u.rows())) throw std::logic_error("unimodular Hermite form is not I");
  return hf.U;
}

std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& m) {
  auto hf = hermite_factor(m.transpose());
  std::vector<std::vector<Integer>> basis;
  for (std::size_t i = hf.rank; i < hf.U.rows(); ++i) basis.push_back(hf.U.row(i));
  return basis;
}

std::vector<Integer> primitive(std::vector<Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) return v;
  auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

std::vector<Integer> circuit_relation(const PointSet& a) {
  if (a.empty()) throw PreconditionError("empty point set");
  const std::size_t n = a.ambient_dim();
  IntMatrix hom(n + 1, a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    hom(0, j) = 1;
    for (std::size_t i = 0; i < n; ++i) hom(i + 1, j) = to_integer(a[j][i]);
  }
  auto ker = integer_kernel(hom);
  if (ker.size() != 1) throw PreconditionError("point set is not a circuit (affine relations: " +
                                               std::to_string(ker.size()) + ")");
  auto m = primitive(std::move(ker.front()));
  for (const auto& x : m)
    if (x == 0) throw PreconditionError("point set is not a circuit (vanishing relation coordinate)");
  return m;
}

SparsePolynomial monomial_substitute(const SparsePolynomial& f, const IntMatrix& u) {
  if (u.rows() != f.num_vars() || !is_unimodular(u)) throw PreconditionError("substitution matrix is not unimodular");
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    std::vector<Integer> a(t.exponents.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = to_integer(t.exponents[i]);
    auto b = u * a;
    ExponentVector e(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) e[i] = to_exponent(b[i]);
    terms.push_back(Term{std::move(e), t.coefficient});
  }
  return SparsePolynomial(f.num_vars(), std::move(terms));
}

}  // namespace fewno
