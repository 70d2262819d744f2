#include "oracles.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fewno::testing {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

long nonzero_uniform(Rng& rng, long lo, long hi) {
  long v = 0;
  while (v == 0) v = uniform(rng, lo, hi);
  return v;
}

Integer random_integer(Rng& rng, const Integer& bound) {
  Integer span = 2 * bound + 1, acc = 0;
  for (int i = 0; i < 4; ++i) acc = (acc << 64) + Integer(static_cast<unsigned long>(rng()));
  return acc % span - bound;
}

IntMatrix random_unimodular(Rng& rng, std::size_t n, int steps) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) {
    if (uniform(rng, 0, 1)) u(0, 0) = -1;
    return u;
  }
  for (int s = 0; s < steps; ++s) {
    auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    if (i == j) {
      u.swap_rows(0, n - 1);
      continue;
    }
    const long k = nonzero_uniform(rng, -3, 3);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
  }
  return u;
}

namespace {

// In-place row reduction; returns rank and the sign/scale for determinants.
std::size_t eliminate(std::vector<std::vector<Rational>>& m, Rational* det) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) {
      if (det) *det = 0;
      continue;
    }
    if (p != r) {
      std::swap(m[p], m[r]);
      if (det) *det = -*det;
    }
    if (det) *det *= m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rational k = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= k * m[r][j];
    }
    ++r;
  }
  if (det && r < rows) *det = 0;
  return r;
}

}  // namespace

std::size_t rational_rank(const std::vector<std::vector<Rational>>& rows) {
  auto m = rows;
  return eliminate(m, nullptr);
}

Rational rational_determinant(std::vector<std::vector<Rational>> m) {
  Rational d;
  eliminate(m, &d);
  return d;
}

std::optional<std::vector<Rational>> rational_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational k = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= k * a[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

std::vector<std::vector<Rational>> homogenized(const PointSet& a) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& p : a) {
    std::vector<Rational> r{Rational(1)};
    for (auto e : p) r.emplace_back(static_cast<long>(e));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::size_t reference_affine_dim(const PointSet& a) { return rational_rank(homogenized(a)) - 1; }

std::optional<std::size_t> reference_interior_point(const PointSet& a) {
  const std::size_t k = a.size();
  for (std::size_t i = 0; i < k; ++i) {
    // b_i = sum_{j != i} lambda_j b_j with sum lambda_j = 1, least squares free:
    // the others are affinely independent, so pick k-1 independent rows of the
    // transposed homogenized system.
    std::vector<std::vector<Rational>> cols;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) cols.push_back(homogenized(a.subset(std::vector<std::size_t>{j}))[0]);
    const std::size_t dim = cols[0].size();
    std::vector<std::vector<Rational>> sys(dim, std::vector<Rational>(k - 1));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c + 1 < k; ++c) sys[r][c] = cols[c][r];
    std::vector<Rational> rhs = homogenized(a.subset(std::vector<std::size_t>{i}))[0];
    // choose independent rows
    std::vector<std::vector<Rational>> sq;
    std::vector<Rational> sb;
    for (std::size_t r = 0; r < dim && sq.size() < k - 1; ++r) {
      auto trial = sq;
      trial.push_back(sys[r]);
      if (rational_rank(trial) == trial.size()) {
        sq = std::move(trial);
        sb.push_back(rhs[r]);
      }
    }
    if (sq.size() != k - 1) continue;
    auto lambda = rational_solve(sq, sb);
    if (!lambda) continue;
    // must satisfy every row, not only the chosen ones
    bool ok = true;
    for (std::size_t r = 0; r < dim && ok; ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c + 1 < k; ++c) s += sys[r][c] * (*lambda)[c];
      ok = s == rhs[r];
    }
    if (ok && std::all_of(lambda->begin(), lambda->end(), [](const Rational& l) { return l > 0; })) return i;
  }
  return std::nullopt;
}

Dense dense_of(const SparsePolynomial& f) {
  Exponent top = 0;
  for (const auto& t : f.terms()) top = std::max(top, t.exponents[0]);
  Dense p(static_cast<std::size_t>(top + 1));
  for (const auto& t : f.terms()) p[static_cast<std::size_t>(t.exponents[0])] = t.coefficient;
  return p;
}

Dense dense_derivative(const Dense& p) {
  Dense d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  return d;
}

Integer sylvester_resultant(const Dense& p, const Dense& q) {
  const std::size_t m = p.size() - 1, n = q.size() - 1, size = m + n;
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size));
  // rows: n shifted copies of p, m shifted copies of q, highest degree first
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = p[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = q[n - i];
  Rational d = rational_determinant(std::move(s));
  return d.get_num();
}

Integer classical_discriminant(const Dense& p) {
  const std::size_t d = p.size() - 1;
  Integer res = sylvester_resultant(p, dense_derivative(p));
  Integer out = res / p.back();
  if ((d * (d - 1) / 2) % 2 == 1) out = -out;
  return out;
}

Rational dense_eval(const Dense& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Rational mpfr_log(const Integer& n, std::size_t bits) {
  mpfr_t x;
  mpfr_init2(x, static_cast<mpfr_prec_t>(4 * bits + 64));
  mpfr_set_z(x, n.get_mpz_t(), MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  Integer z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  mpfr_clear(x);
  Rational q(z);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

bool same_open_orthant(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  if (p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (sgn(p[i]) == 0 || sgn(p[i]) != sgn(q[i])) return false;
  return true;
}

namespace {

Rational term_value(const Term& t, const std::vector<Rational>& x) {
  Rational v = t.coefficient;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Exponent e = t.exponents[i];
    const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), x[i].get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), x[i].get_den_mpz_t(), k);
    Rational p = e < 0 ? Rational(den, num) : Rational(num, den);
    p.canonicalize();  // den may be negative here
    v *= p;
  }
  return v;
}

bool sign_change_ok(const SparsePolynomial& f, const SignChange& s) {
  if (s.positive.size() != f.num_vars() || s.negative.size() != f.num_vars()) return false;
  if (!same_open_orthant(s.positive, s.negative)) return false;
  Rational a = 0, b = 0;
  for (const auto& t : f.terms()) {
    a += term_value(t, s.positive);
    b += term_value(t, s.negative);
  }
  return a > 0 && b < 0;
}

}  // namespace

bool check_certificate(const SparsePolynomial& f, const Certificate& c) {
  if (auto r = std::get_if<RationalRoot>(&c)) {
    if (r->point.size() != f.num_vars()) return false;
    Rational v = 0;
    for (const auto& t : f.terms()) v += term_value(t, r->point);
    return v == 0;
  }
  if (auto s = std::get_if<SignChange>(&c)) return sign_change_ok(f, *s);
  if (auto w = std::get_if<FacetNormal>(&c)) return sign_change_ok(f, w->witness);
  const auto& d = std::get<DegeneratePoint>(c);
  const std::size_t n = f.num_vars();
  if (d.exact) {
    const auto& z = *d.exact;
    if (z.size() != n) return false;
    for (const auto& q : z)
      if (q == 0) return false;
    Rational v = 0;
    std::vector<Rational> grad(n);
    for (const auto& t : f.terms()) {
      Rational tv = term_value(t, z);
      v += tv;
      for (std::size_t i = 0; i < n; ++i) grad[i] += tv * static_cast<long>(t.exponents[i]);
    }
    return v == 0 && std::all_of(grad.begin(), grad.end(), [](const Rational& g) { return g == 0; });
  }
  // floating point, relative to the magnitude of the terms
  long double v = 0, scale = 0;
  std::vector<long double> grad(n, 0);
  for (const auto& t : f.terms()) {
    long double tv = t.coefficient.get_d();
    for (std::size_t i = 0; i < n; ++i) tv *= std::pow(static_cast<long double>(d.approx[i]), static_cast<long double>(t.exponents[i]));
    v += tv;
    scale += std::fabs(tv);
    for (std::size_t i = 0; i < n; ++i) grad[i] += tv * static_cast<long double>(t.exponents[i]);
  }
  if (std::fabs(v) > 1e-7L * scale) return false;
  for (auto g : grad)
    if (std::fabs(g) > 1e-7L * scale * 64) return false;
  return true;
}

std::string clause_text(const Clause& c) {
  std::string s;
  for (const auto& l : c) {
    if (!s.empty()) s += " v ";
    s += (l.negated ? "~X" : "X") + std::to_string(l.var);
  }
  return s;
}

Sat3Formula random_3sat(Rng& rng, std::size_t vars, std::size_t clauses) {
  Sat3Formula phi;
  phi.num_vars = vars;
  for (std::size_t k = 0; k < clauses; ++k) {
    Clause c;
    for (auto& l : c) l = Literal{static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(vars))), uniform(rng, 0, 1) == 1};
    phi.clauses.push_back(c);
  }
  return phi;
}

Integer power_product(const std::vector<Integer>& bases, const std::vector<Integer>& exps) {
  Integer p = 1, t;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    mpz_pow_ui(t.get_mpz_t(), bases[i].get_mpz_t(), exps[i].get_ui());
    p *= t;
  }
  return p;
}

}  // namespace fewno::testing
