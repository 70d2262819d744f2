#include "fewno/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "fewno/geometry.hpp"

namespace fewno {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Empty: return "empty";
    case Verdict::Nonempty: return "nonempty";
    case Verdict::Unknown: return "unknown";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Empty: return "EMPTY";
    case Classification::PointMult1: return "POINT_MULT_1";
    case Classification::SingularPoint: return "SINGULAR_POINT";
    case Classification::CompactSphere: return "COMPACT_SPHERE";
    case Classification::AllNoncompact: return "ALL_NONCOMPACT";
    case Classification::NonemptyUnclassified: return "NONEMPTY_UNCLASSIFIED";
  }
  return "EMPTY";
}

namespace {

// ---------------------------------------------------------------- points

Rational pow2(const Integer& e) {
  if (!e.fits_slong_p()) throw std::overflow_error("power of two out of range");
  long k = e.get_si();
  Rational r = 1;
  if (k >= 0) mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(k));
  else mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(-k));
  return r;
}

Rational rpow(const Rational& x, const Integer& e) {
  if (!e.fits_slong_p()) throw std::overflow_error("exponent out of range");
  long k = e.get_si();
  if (x == 0 && k < 0) throw std::domain_error("division by zero");
  unsigned long a = static_cast<unsigned long>(k < 0 ? -k : k);
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), a);
  r.canonicalize();
  return k < 0 ? Rational(1 / r) : r;
}

// x_t = orthant_t * 2^(-k w_t)
std::vector<Rational> weighted_point(const std::vector<Integer>& w, const Integer& k, const std::vector<int>& orthant) {
  std::vector<Rational> x;
  for (std::size_t t = 0; t < w.size(); ++t) {
    Rational v = pow2(-k * w[t]);
    x.push_back(orthant[t] < 0 ? Rational(-v) : v);
  }
  return x;
}

int orthant_sign(const ExponentVector& a, const std::vector<int>& orthant) {
  int s = 1;
  for (std::size_t t = 0; t < a.size(); ++t)
    if (orthant[t] < 0 && (a[t] % 2 != 0)) s = -s;
  return s;
}

std::vector<Integer> signed_coefficients(const SparsePolynomial& f, const std::vector<int>& orthant) {
  std::vector<Integer> c;
  for (const auto& t : f.terms()) c.push_back(orthant_sign(t.exponents, orthant) * t.coefficient);
  return c;
}

// Point in the given orthant where term i dominates all others; requires a_i
// to be a vertex of the support.
std::optional<std::vector<Rational>> dominance_point(const SparsePolynomial& f, std::size_t i,
                                                     const std::vector<int>& orthant) {
  auto w = vertex_weight(support(f), i);
  if (!w) return std::nullopt;
  Integer rest = 0;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (j != i) rest += abs(f[j].coefficient);
  Integer k = static_cast<unsigned long>(rest == 0 ? 1 : mpz_sizeinbase(rest.get_mpz_t(), 2) + 1);
  return weighted_point(*w, k, orthant);
}

// Two vertex-dominance points of opposite sign inside one orthant.
std::optional<SignChange> vertex_sign_change(const SparsePolynomial& f, const std::vector<int>& orthant) {
  auto c = signed_coefficients(f, orthant);
  std::optional<std::vector<Rational>> pos, neg;
  for (std::size_t i = 0; i < f.size() && (!pos || !neg); ++i) {
    auto& slot = c[i] > 0 ? pos : neg;
    if (slot) continue;
    slot = dominance_point(f, i, orthant);
  }
  if (!pos || !neg) return std::nullopt;
  SignChange s{*pos, *neg};
  if (sign_at(f, s.positive) <= 0 || sign_at(f, s.negative) >= 0) throw std::logic_error("dominance point has the wrong sign");
  return s;
}

std::vector<int> positive_orthant(std::size_t n) { return std::vector<int>(n, 1); }

// ---------------------------------------------------------------- certificate maps

// z in Q^d  ->  x = (z, 1, ..., 1)^U in Q^n
std::vector<Rational> lift_point(const std::vector<Rational>& z, const IntMatrix& u) {
  std::vector<Rational> x(u.cols(), Rational(1));
  for (std::size_t j = 0; j < u.cols(); ++j)
    for (std::size_t i = 0; i < z.size(); ++i)
      if (u(i, j) != 0) x[j] *= rpow(z[i], u(i, j));
  return x;
}

Certificate lift_certificate(const Certificate& c, const IntMatrix& u) {
  const std::size_t d = std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RationalRoot>) return v.point.size();
        else if constexpr (std::is_same_v<T, SignChange>) return v.positive.size();
        else if constexpr (std::is_same_v<T, FacetNormal>) return v.witness.positive.size();
        else return v.orthant.size();
      },
      c);
  if (auto* r = std::get_if<RationalRoot>(&c)) return RationalRoot{lift_point(r->point, u)};
  if (auto* s = std::get_if<SignChange>(&c)) return SignChange{lift_point(s->positive, u), lift_point(s->negative, u)};
  if (auto* f = std::get_if<FacetNormal>(&c))
    return SignChange{lift_point(f->witness.positive, u), lift_point(f->witness.negative, u)};
  const auto& p = std::get<DegeneratePoint>(c);
  DegeneratePoint q = p;
  q.exponent_map = p.exponent_map * u.block(0, d, 0, u.cols());
  q.orthant = positive_orthant(u.cols());
  if (p.exact) q.exact = lift_point(*p.exact, u);
  q.approx.assign(u.cols(), 0.0);
  for (std::size_t j = 0; j < u.cols(); ++j) {
    double lg = 0;
    for (std::size_t i = 0; i < d; ++i) lg += u(i, j).get_d() * std::log(p.approx[i]);
    q.approx[j] = std::exp(lg);
  }
  return q;
}

std::vector<Rational> orthant_point(const std::vector<Rational>& x, const std::vector<int>& orthant) {
  std::vector<Rational> y = x;
  for (std::size_t t = 0; t < y.size(); ++t)
    if (orthant[t] < 0) y[t] = -y[t];
  return y;
}

// Apply x -> orthant * x to a certificate found for f(orthant * x).
Certificate reflect_certificate(const Certificate& c, const std::vector<int>& orthant) {
  if (auto* r = std::get_if<RationalRoot>(&c)) return RationalRoot{orthant_point(r->point, orthant)};
  if (auto* s = std::get_if<SignChange>(&c))
    return SignChange{orthant_point(s->positive, orthant), orthant_point(s->negative, orthant)};
  if (auto* f = std::get_if<FacetNormal>(&c))
    return SignChange{orthant_point(f->witness.positive, orthant), orthant_point(f->witness.negative, orthant)};
  DegeneratePoint p = std::get<DegeneratePoint>(c);
  for (std::size_t t = 0; t < orthant.size(); ++t) {
    p.orthant[t] *= orthant[t];
    p.approx[t] *= orthant[t];
  }
  if (p.exact) p.exact = orthant_point(*p.exact, orthant);
  return p;
}

SignChange flipped(const SignChange& s) { return SignChange{s.negative, s.positive}; }

// ---------------------------------------------------------------- polynomials

SparsePolynomial sub_polynomial(const SparsePolynomial& f, const std::vector<std::size_t>& idx) {
  std::vector<Term> terms;
  for (std::size_t i : idx) terms.push_back(f[i]);
  return SparsePolynomial(f.num_vars(), std::move(terms));
}

bool mixed_signs(const SparsePolynomial& f, const std::vector<std::size_t>& idx) {
  bool pos = false, neg = false;
  for (std::size_t i : idx) (f[i].coefficient > 0 ? pos : neg) = true;
  return pos && neg;
}

// ---------------------------------------------------------------- sphere witness

// For f with a caged alternation at `interior` (negative coefficient there,
// positive elsewhere), approximately minimize f(e^u) e^{-a_int.u} and test
// the minimizer exactly. Returns a point with f < 0 when found.
std::optional<std::vector<Rational>> caged_negative_point(const SparsePolynomial& f, std::size_t interior) {
  const std::size_t n = f.num_vars();
  std::vector<std::vector<double>> d;
  std::vector<double> logc;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i == interior) continue;
    std::vector<double> di(n);
    for (std::size_t t = 0; t < n; ++t)
      di[t] = static_cast<double>(f[i].exponents[t]) - static_cast<double>(f[interior].exponents[t]);
    d.push_back(std::move(di));
    long e;
    double m = mpz_get_d_2exp(&e, f[i].coefficient.get_mpz_t());
    logc.push_back(std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0));
  }
  auto phi = [&](const std::vector<double>& u) {
    // log-sum-exp keeps large coefficients finite
    std::vector<double> z(d.size());
    double mx = -INFINITY;
    for (std::size_t i = 0; i < d.size(); ++i) {
      z[i] = logc[i];
      for (std::size_t t = 0; t < n; ++t) z[i] += d[i][t] * u[t];
      mx = std::max(mx, z[i]);
    }
    double s = 0;
    for (double v : z) s += std::exp(v - mx);
    return mx + std::log(s);
  };
  std::vector<double> u(n, 0.0);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> z(d.size());
    double mx = -INFINITY;
    for (std::size_t i = 0; i < d.size(); ++i) {
      z[i] = logc[i];
      for (std::size_t t = 0; t < n; ++t) z[i] += d[i][t] * u[t];
      mx = std::max(mx, z[i]);
    }
    std::vector<double> g(n, 0.0);
    std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < d.size(); ++i) {
      double wgt = std::exp(z[i] - mx);
      for (std::size_t a = 0; a < n; ++a) {
        g[a] += wgt * d[i][a];
        for (std::size_t b = 0; b < n; ++b) h[a][b] += wgt * d[i][a] * d[i][b];
      }
    }
    // Newton step on the (scaled) sum; solve h s = -g by elimination
    std::vector<double> s(n);
    for (std::size_t a = 0; a < n; ++a) s[a] = -g[a];
    auto hh = h;
    for (std::size_t a = 0; a < n; ++a) hh[a][a] += 1e-12 * (1 + hh[a][a]);
    bool singular = false;
    for (std::size_t c = 0; c < n && !singular; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < n; ++r)
        if (std::fabs(hh[r][c]) > std::fabs(hh[p][c])) p = r;
      if (std::fabs(hh[p][c]) < 1e-300) {
        singular = true;
        break;
      }
      std::swap(hh[p], hh[c]);
      std::swap(s[p], s[c]);
      for (std::size_t r = c + 1; r < n; ++r) {
        double q = hh[r][c] / hh[c][c];
        for (std::size_t k = c; k < n; ++k) hh[r][k] -= q * hh[c][k];
        s[r] -= q * s[c];
      }
    }
    if (singular) break;
    for (std::size_t c = n; c-- > 0;) {
      for (std::size_t k = c + 1; k < n; ++k) s[c] -= hh[c][k] * s[k];
      s[c] /= hh[c][c];
    }
    double f0 = phi(u), step = 1.0, norm = 0;
    for (double v : s) norm = std::max(norm, std::fabs(v));
    if (norm < 1e-15) break;
    std::vector<double> un(n);
    while (step > 1e-12) {
      for (std::size_t t = 0; t < n; ++t) un[t] = u[t] + step * s[t];
      if (phi(un) <= f0) break;
      step /= 2;
    }
    if (step <= 1e-12) break;
    u = un;
  }
  std::vector<Rational> x(n);
  for (std::size_t t = 0; t < n; ++t) {
    double v = std::exp(u[t]);
    if (!std::isfinite(v) || v <= 0) return std::nullopt;
    x[t] = Rational(v);
  }
  if (sign_at(f, x) < 0) return x;
  return std::nullopt;
}

// Cramer: lambda with M lambda = |det M| * (1, ..., 1).
std::vector<Integer> positive_combination(const IntMatrix& m) {
  const std::size_t k = m.rows();
  Integer det = determinant(m);
  if (det == 0) throw std::logic_error("singular extension system");
  std::vector<Integer> lambda(k);
  for (std::size_t t = 0; t < k; ++t) {
    IntMatrix mt = m;
    for (std::size_t r = 0; r < k; ++r) mt(r, t) = 1;
    lambda[t] = sgn(det) * determinant(mt);
  }
  return lambda;
}

// Given x_b with h(x_b) < 0 for the circuit part h of f (a_1 = O), push the
// remaining monomials to zero along a weight that fixes every circuit
// monomial.
std::optional<std::vector<Rational>> extend_negative_point(const SparsePolynomial& f, const CircuitLayout& layout,
                                                           const std::vector<Rational>& xb) {
  const std::size_t n = f.num_vars();
  IntMatrix rows(layout.ell, n);
  for (std::size_t r = 0; r < layout.ell; ++r)
    for (std::size_t t = 0; t < n; ++t) rows(r, t) = to_integer(f[layout.order[r]].exponents[t]);
  auto ker = integer_kernel(rows);
  const std::size_t extra = layout.order.size() - layout.ell;
  if (ker.size() != extra) return std::nullopt;
  IntMatrix m(extra, extra);
  for (std::size_t k = 0; k < extra; ++k)
    for (std::size_t t = 0; t < extra; ++t) {
      Integer s = 0;
      for (std::size_t c = 0; c < n; ++c) s += ker[t][c] * to_integer(f[layout.order[layout.ell + k]].exponents[c]);
      m(k, t) = s;
    }
  auto lambda = positive_combination(m);
  std::vector<Integer> w(n, 0);
  for (std::size_t t = 0; t < extra; ++t)
    for (std::size_t c = 0; c < n; ++c) w[c] += lambda[t] * ker[t][c];
  for (Integer k = 1; k <= 4096; k *= 2) {
    auto x = xb;
    for (std::size_t c = 0; c < n; ++c) x[c] *= pow2(-k * w[c]);
    if (sign_at(f, x) < 0) return x;
  }
  return std::nullopt;
}

FeasibilityReport positive_only(Classification c, std::string_view msg) {
  FeasibilityReport r;
  r.classification = c;
  r.positive = c == Classification::Empty ? Verdict::Empty : Verdict::Nonempty;
  r.messages.emplace_back(msg);
  return r;
}

}  // namespace

// ---------------------------------------------------------------- verification

bool verify_certificate(const SparsePolynomial& f, const Certificate& c) {
  auto same_open_orthant = [](const std::vector<Rational>& p, const std::vector<Rational>& q) {
    if (p.size() != q.size()) return false;
    for (std::size_t t = 0; t < p.size(); ++t)
      if (p[t] == 0 || q[t] == 0 || sgn(p[t]) != sgn(q[t])) return false;
    return true;
  };
  try {
    if (auto* r = std::get_if<RationalRoot>(&c)) return r->point.size() == f.num_vars() && sign_at(f, r->point) == 0;
    const SignChange* s = std::get_if<SignChange>(&c);
    if (auto* fn = std::get_if<FacetNormal>(&c)) s = &fn->witness;
    if (s) {
      if (s->positive.size() != f.num_vars() || !same_open_orthant(s->positive, s->negative)) return false;
      return sign_at(f, s->positive) > 0 && sign_at(f, s->negative) < 0;
    }
    const auto& p = std::get<DegeneratePoint>(c);
    const std::size_t n = f.num_vars();
    if (p.exact) {
      const auto& z = *p.exact;
      if (z.size() != n || sign_at(f, z) != 0) return false;
      // x_i df/dx_i at z, i.e. sum a_i c x^a
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Term> terms;
        for (const auto& t : f.terms())
          if (t.exponents[i] != 0) terms.push_back(Term{t.exponents, t.coefficient * to_integer(t.exponents[i])});
        if (terms.empty()) continue;
        if (evaluate(SparsePolynomial(n, terms), z) != 0) return false;
      }
      return true;
    }
    if (p.approx.size() != n) return false;
    std::vector<long double> vals;
    for (const auto& t : f.terms()) {
      long double v = t.coefficient.get_d();
      for (std::size_t i = 0; i < n; ++i) v *= std::pow(static_cast<long double>(p.approx[i]), static_cast<long double>(t.exponents[i]));
      vals.push_back(v);
    }
    auto near_zero = [&](const std::vector<long double>& w) {
      long double sum = 0, scale = 0;
      for (std::size_t j = 0; j < vals.size(); ++j) {
        sum += w[j] * vals[j];
        scale += std::fabs(w[j] * vals[j]);
      }
      return std::fabs(sum) <= 1e-7L * (scale + 1e-300L);
    };
    if (!near_zero(std::vector<long double>(vals.size(), 1.0L))) return false;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<long double> w;
      for (const auto& t : f.terms()) w.push_back(static_cast<long double>(t.exponents[i]));
      if (!near_zero(w)) return false;
    }
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

// ---------------------------------------------------------------- simplex

FeasibilityReport feas_simplex(const SparsePolynomial& f) {
  const PointSet a = support(f);
  if (!affinely_independent(a)) throw PreconditionError("support is not affinely independent");
  const std::size_t n = f.num_vars();
  FeasibilityReport r;
  std::vector<std::size_t> all(f.size());
  std::iota(all.begin(), all.end(), 0);

  if (mixed_signs(f, all)) {
    r.positive = r.nonzero = Verdict::Nonempty;
    r.real = f.is_laurent() ? Verdict::NotApplicable : Verdict::Nonempty;
    r.classification = n == 1 ? Classification::PointMult1 : Classification::AllNoncompact;
    r.messages.emplace_back(messages::kSimplexAllNonempty);
    if (auto s = vertex_sign_change(f, positive_orthant(n))) {
      r.certificate = *s;
      r.nonzero_witness = *s;
      if (r.real == Verdict::Nonempty) r.real_witness = *s;
    }
    return r;
  }

  r.positive = Verdict::Empty;
  r.classification = Classification::Empty;
  std::optional<std::size_t> odd;
  for (std::size_t j = 1; j < f.size() && !odd; ++j)
    for (std::size_t t = 0; t < n; ++t)
      if ((f[j].exponents[t] - f[0].exponents[t]) % 2 != 0) {
        odd = t;
        break;
      }
  if (odd) {
    r.nonzero = Verdict::Nonempty;
    r.real = f.is_laurent() ? Verdict::NotApplicable : Verdict::Nonempty;
    r.messages.emplace_back(messages::kSimplexOddCoordinate);
    std::vector<int> orthant = positive_orthant(n);
    orthant[*odd] = -1;
    if (auto s = vertex_sign_change(f, orthant)) {
      r.nonzero_witness = *s;
      if (r.real == Verdict::Nonempty) r.real_witness = *s;
    }
    return r;
  }
  r.nonzero = Verdict::Empty;
  r.messages.emplace_back(messages::kSimplexPositiveNonzeroEmpty);
  if (f.is_laurent()) {
    r.real = Verdict::NotApplicable;
  } else if (!f.has_constant_term()) {
    r.real = Verdict::Nonempty;
    r.real_witness = RationalRoot{std::vector<Rational>(n, Rational(0))};
    r.messages.emplace_back(messages::kRealNonempty);
  } else {
    r.real = Verdict::Empty;
    r.messages.emplace_back(messages::kRealEmpty);
  }
  return r;
}

// ---------------------------------------------------------------- circuits

PreparedCircuit prepare_circuit(const SparsePolynomial& f) {
  const PointSet a = support(f);
  const std::size_t n = f.num_vars();
  if (a.size() != n + 2 || affine_dim(a) != n) throw PreconditionError("need n+2 terms spanning dimension n");
  auto found = find_circuit(a);
  if (!found) throw std::logic_error("n+2 points in dimension n without a circuit");
  auto ip = interior_point(found->circuit);
  std::optional<std::size_t> interior;
  if (ip) interior = found->indices[*ip];
  PreparedCircuit p{f, {}, {}};
  std::vector<std::size_t> b_rest;
  for (std::size_t i : found->indices)
    if (!interior || i != *interior) b_rest.push_back(i);
  const std::size_t first = b_rest.front();
  p.layout.order = b_rest;
  if (interior) p.layout.order.push_back(*interior);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::find(found->indices.begin(), found->indices.end(), i) == found->indices.end()) p.layout.order.push_back(i);
  p.layout.ell = found->indices.size();
  p.layout.has_interior = interior.has_value();
  p.shift = ExponentVector(n);
  for (std::size_t t = 0; t < n; ++t) p.shift[t] = -f[first].exponents[t];
  // translation preserves the lexicographic term order, so indices carry over
  p.f = f.shifted(p.shift);
  return p;
}

FeasibilityReport feas_circuit(const SparsePolynomial& f, const CircuitLayout& layout, const FeasOptions& options) {
  const std::size_t n = f.num_vars();
  const PointSet a = support(f);
  // --- preconditions
  if (f.size() != n + 2) throw PreconditionError("circuit case needs exactly n+2 terms");
  if (layout.order.size() != n + 2) throw PreconditionError("layout must order every term");
  {
    std::vector<std::size_t> sorted = layout.order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i) throw PreconditionError("layout is not a permutation of the terms");
  }
  if (layout.ell < 3 || layout.ell > n + 2) throw PreconditionError("circuit size out of range");
  if (std::any_of(f[layout.order[0]].exponents.begin(), f[layout.order[0]].exponents.end(),
                  [](Exponent e) { return e != 0; }))
    throw PreconditionError("a_1 must be the origin");
  if (affine_dim(a) != n) throw PreconditionError("support must span dimension n");
  std::vector<std::size_t> b_idx(layout.order.begin(), layout.order.begin() + static_cast<std::ptrdiff_t>(layout.ell));
  CircuitData circuit = make_circuit(a.subset(b_idx));
  {
    auto ip = interior_point(circuit);
    if (layout.has_interior != ip.has_value() || (ip && *ip != layout.ell - 1))
      throw PreconditionError("interior circuit point must be ordered last within the circuit");
  }

  // --- step 1: facets with affinely independent faces and mixed signs
  if (n >= 2) {
    for (const auto& w : facet_normals(a)) {
      auto face = face_indices(a, w);
      if (!affinely_independent(a.subset(face)) || !mixed_signs(f, face)) continue;
      auto r = positive_only(Classification::AllNoncompact, messages::kNoncompact);
      if (auto s = vertex_sign_change(f, positive_orthant(n))) r.certificate = FacetNormal{w, *s};
      return r;
    }
  }

  // --- step 2: degenerate circuit whose circuit has an interior point
  if (layout.ell < n + 2 && layout.has_interior) {
    const std::size_t inner = layout.order[layout.ell - 1];
    int vertex_sign = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i == inner) continue;
      int s = sgn(f[i].coefficient);
      if (vertex_sign == 0) vertex_sign = s;
      else if (s != vertex_sign) throw std::logic_error("mixed vertex signs survived the facet check");
    }
    const SparsePolynomial g = vertex_sign > 0 ? f : f.negated();
    const SparsePolynomial h = sub_polynomial(g, b_idx);
    FeasibilityReport hr = classify_positive(h, options);
    if (!hr.classification) throw std::logic_error("circuit part left unclassified");
    const auto hc = *hr.classification;
    if (hc == Classification::CompactSphere || hc == Classification::AllNoncompact ||
        hc == Classification::NonemptyUnclassified) {
      auto r = positive_only(Classification::NonemptyUnclassified, messages::kSmoothNoncompact);
      const SignChange* hs = hr.certificate ? std::get_if<SignChange>(&*hr.certificate) : nullptr;
      if (hs) {
        auto neg = extend_negative_point(g, layout, hs->negative);
        auto pos = dominance_point(g, layout.order[0], positive_orthant(n));
        if (neg && pos && sign_at(g, *pos) > 0) {
          SignChange sc{*pos, *neg};
          r.certificate = vertex_sign > 0 ? sc : flipped(sc);
        }
      }
      return r;
    }
  }

  // --- step 3: a support point interior to Conv A
  if (layout.ell == n + 2 && layout.has_interior) {
    const std::size_t inner = layout.order[layout.ell - 1];
    if (n == 1) {
      std::vector<std::size_t> by_exp(f.size());
      std::iota(by_exp.begin(), by_exp.end(), 0);
      std::sort(by_exp.begin(), by_exp.end(), [&](std::size_t x, std::size_t y) { return f[x].exponents[0] < f[y].exponents[0]; });
      int alternations = 0;
      for (std::size_t k = 1; k < by_exp.size(); ++k)
        if (sgn(f[by_exp[k]].coefficient) != sgn(f[by_exp[k - 1]].coefficient)) ++alternations;
      if (alternations == 1) {
        auto r = positive_only(Classification::PointMult1, messages::kPointMult1);
        if (auto s = vertex_sign_change(f, positive_orthant(n))) r.certificate = *s;
        return r;
      }
    }
    auto signs = sign_distribution(f);
    std::vector<int> ordered_signs;
    for (std::size_t i : b_idx) ordered_signs.push_back(signs[i]);
    if (caged_alternation(circuit, ordered_signs)) {
      // orient: interior coefficient negative, interior relation entry negative
      const bool negate = f[inner].coefficient > 0;
      const SparsePolynomial g = negate ? f.negated() : f;
      std::vector<Integer> m = circuit.relation;
      if (m.back() > 0)
        for (auto& x : m) x = -x;
      CircuitData oriented = make_circuit(circuit.points, m);
      std::vector<Integer> coeffs;
      for (std::size_t i : b_idx) coeffs.push_back(g[i].coefficient);
      CircuitDiscriminant disc = make_discriminant(oriented, coeffs);
      if (adisc_vanish(disc)) {
        auto r = positive_only(Classification::SingularPoint, messages::kSingularPoint);
        try {
          r.certificate = degenerate_point(disc);
        } catch (const std::domain_error&) {
        }
        return r;
      }
      const int target = mpz_even_p(m.back().get_mpz_t()) ? 1 : -1;
      if (adisc_sign(disc, options.sign) == target) {
        auto r = positive_only(Classification::CompactSphere, messages::kSphere);
        if (options.sphere_witness) {
          auto neg = caged_negative_point(g, inner);
          auto pos = dominance_point(g, layout.order[0], positive_orthant(n));
          if (neg && pos && sign_at(g, *pos) > 0) {
            SignChange sc{*pos, *neg};
            r.certificate = negate ? flipped(sc) : sc;
          }
        }
        return r;
      }
    }
  }

  // --- step 4
  return positive_only(Classification::Empty, messages::kPositiveEmpty);
}

// ---------------------------------------------------------------- dimension

DimensionReduction reduce_dimension(const SparsePolynomial& f) {
  const std::size_t n = f.num_vars();
  const PointSet a = support(f);
  IntMatrix diffs(n, a.size() - 1);
  for (std::size_t j = 1; j < a.size(); ++j)
    for (std::size_t t = 0; t < n; ++t) diffs(t, j - 1) = to_integer(a[j][t]) - to_integer(a[0][t]);
  auto hf = hermite_factor(diffs);
  const std::size_t d = hf.rank;
  if (d >= n) throw PreconditionError("support is already full-dimensional");
  if (d == 0) throw PreconditionError("single-term polynomial has no reduced form");
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    std::vector<Integer> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = to_integer(t.exponents[k]);
    auto b = hf.U * col;
    ExponentVector e(d);
    for (std::size_t k = 0; k < d; ++k) e[k] = to_exponent(b[k]);
    terms.push_back(Term{std::move(e), t.coefficient});
  }
  return {SparsePolynomial(d, std::move(terms)), hf.U, d};
}

FeasibilityReport classify_positive(const SparsePolynomial& f, const FeasOptions& options) {
  const PointSet a = support(f);
  const std::size_t n = f.num_vars();
  const std::size_t d = affine_dim(a);
  if (a.size() == d + 1) {
    FeasibilityReport s = feas_simplex(f);
    FeasibilityReport r;
    r.positive = s.positive;
    r.classification = s.classification;
    r.certificate = s.certificate;
    r.messages.emplace_back(s.positive == Verdict::Empty ? messages::kPositiveEmpty
                            : n == 1                       ? messages::kPointMult1
                                                           : messages::kNoncompact);
    return r;
  }
  if (a.size() > d + 2) throw std::domain_error("support has more than dim+2 points");
  if (d < n) {
    DimensionReduction red = reduce_dimension(f);
    FeasibilityReport g = classify_positive(red.g, options);
    if (g.positive == Verdict::Empty) return positive_only(Classification::Empty, messages::kPositiveEmpty);
    auto r = positive_only(Classification::AllNoncompact, messages::kNoncompact);
    if (g.certificate) r.certificate = lift_certificate(*g.certificate, red.U);
    return r;
  }
  PreparedCircuit p = prepare_circuit(f);
  return feas_circuit(p.f, p.layout, options);
}

// ---------------------------------------------------------------- all of R^n

FeasibilityReport feas_real_full(const SparsePolynomial& f, const FeasOptions& options) {
  const std::size_t n = f.num_vars();
  FeasibilityReport r;
  {
    const PointSet a = support(f);
    if (a.size() > affine_dim(a) + 2) throw std::domain_error("support has more than dim+2 points");
  }
  try {
    FeasibilityReport p = classify_positive(f, options);
    r.positive = p.positive;
    r.classification = p.classification;
    r.certificate = p.certificate;
    r.messages = p.messages;
  } catch (const PrecisionExhausted& e) {
    r.positive = Verdict::Unknown;
    r.messages.emplace_back(e.what());
  }

  // patterns over {0, 1, -1}^n; sub-instances with identical data are solved once
  std::map<std::string, Verdict> solved;
  auto solve_pattern = [&](const std::vector<int>& pattern, std::optional<Certificate>& witness) -> Verdict {
    std::vector<std::size_t> live;
    for (std::size_t t = 0; t < n; ++t)
      if (pattern[t] != 0) live.push_back(t);
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
      bool keep = true;
      for (std::size_t k = 0; k < n; ++k)
        if (pattern[k] == 0 && t.exponents[k] != 0) keep = false;
      if (!keep) continue;
      ExponentVector e;
      int s = 1;
      for (std::size_t k : live) {
        e.push_back(t.exponents[k]);
        if (pattern[k] < 0 && t.exponents[k] % 2 != 0) s = -s;
      }
      terms.push_back(Term{std::move(e), s * t.coefficient});
    }
    std::vector<Rational> base(n, Rational(0));
    if (terms.empty()) {
      // f vanishes on the whole coordinate subspace
      for (std::size_t k : live) base[k] = pattern[k];
      witness = RationalRoot{base};
      return Verdict::Nonempty;
    }
    if (live.empty()) return Verdict::Empty;  // nonzero constant
    std::optional<SparsePolynomial> g;
    try {
      g.emplace(live.size(), std::move(terms));
    } catch (const std::domain_error&) {
      for (std::size_t k : live) base[k] = pattern[k];
      witness = RationalRoot{base};
      return Verdict::Nonempty;
    }
    const std::string key = std::to_string(live.size()) + "|" + to_string(*g);
    auto hit = solved.find(key);
    if (hit != solved.end() && hit->second != Verdict::Nonempty) return hit->second;
    Verdict v;
    std::optional<Certificate> sub;
    try {
      FeasibilityReport gr = classify_positive(*g, options);
      v = gr.positive;
      sub = gr.certificate;
    } catch (const PrecisionExhausted&) {
      v = Verdict::Unknown;
    }
    solved[key] = v;
    if (v == Verdict::Nonempty && sub) {
      // embed: live coordinates from the sub-certificate, reflected by the pattern
      auto embed = [&](const std::vector<Rational>& y) {
        std::vector<Rational> x(n, Rational(0));
        for (std::size_t i = 0; i < live.size(); ++i) x[live[i]] = pattern[live[i]] < 0 ? Rational(-y[i]) : y[i];
        return x;
      };
      if (auto* rr = std::get_if<RationalRoot>(&*sub)) witness = RationalRoot{embed(rr->point)};
      else if (auto* sc = std::get_if<SignChange>(&*sub)) witness = SignChange{embed(sc->positive), embed(sc->negative)};
      else if (auto* fn = std::get_if<FacetNormal>(&*sub))
        witness = SignChange{embed(fn->witness.positive), embed(fn->witness.negative)};
      else if (auto* dp = std::get_if<DegeneratePoint>(&*sub); dp && dp->exact)
        witness = RationalRoot{embed(*dp->exact)};
      else if (live.size() == n) {
        std::vector<int> orth(pattern.begin(), pattern.end());
        witness = reflect_certificate(*sub, orth);
      }
    }
    return v;
  };

  auto sweep = [&](bool allow_zero, std::optional<Certificate>& witness) -> Verdict {
    bool unknown = false;
    std::vector<int> pattern(n, 1);
    const int lo = allow_zero ? 0 : 1;
    // odometer over digits {1, -1} or {1, -1, 0}
    const std::vector<int> digits = {1, -1, 0};
    std::vector<int> idx(n, 0);
    while (true) {
      for (std::size_t t = 0; t < n; ++t) pattern[t] = digits[static_cast<std::size_t>(idx[t])];
      bool skip = allow_zero && std::none_of(pattern.begin(), pattern.end(), [](int v) { return v == 0; });
      if (!skip) {
        Verdict v = solve_pattern(pattern, witness);
        if (v == Verdict::Nonempty) return v;
        if (v == Verdict::Unknown) unknown = true;
      }
      std::size_t t = 0;
      const int top = 2 - lo;
      while (t < n && idx[t] == top) idx[t++] = 0;
      if (t == n) break;
      ++idx[t];
    }
    return unknown ? Verdict::Unknown : Verdict::Empty;
  };

  r.nonzero = sweep(false, r.nonzero_witness);
  if (f.is_laurent()) {
    r.real = Verdict::NotApplicable;
  } else if (!f.has_constant_term()) {
    r.real = Verdict::Nonempty;
    r.real_witness = RationalRoot{std::vector<Rational>(n, Rational(0))};
  } else if (r.nonzero == Verdict::Nonempty) {
    r.real = Verdict::Nonempty;
    r.real_witness = r.nonzero_witness;
  } else {
    Verdict v = sweep(true, r.real_witness);
    r.real = v == Verdict::Empty && r.nonzero == Verdict::Unknown ? Verdict::Unknown : v;
  }
  if (r.real == Verdict::Nonempty) r.messages.emplace_back(messages::kRealNonempty);
  if (r.real == Verdict::Empty) r.messages.emplace_back(messages::kRealEmpty);
  return r;
}

// ---------------------------------------------------------------- topology

std::size_t noncompact_bound(std::size_t n) {
  switch (n) {
    case 1: return 0;
    case 2: return 2;
    case 3: return 6;
    case 4: return 9;
    default: return 2 * n + 2;
  }
}

TopologyReport topology_report(const SparsePolynomial& f, const FeasOptions& options) {
  TopologyReport t;
  t.n = f.num_vars();
  t.noncompact_bound = noncompact_bound(t.n);
  const PointSet a = support(f);
  t.interior_disjoint = true;
  if (a.size() == t.n + 2 && affine_dim(a) == t.n) {
    auto c = find_circuit(a);
    if (c && c->indices.size() == a.size() && interior_point(c->circuit)) t.interior_disjoint = false;
  }
  FeasibilityReport r = classify_positive(f, options);
  t.classification = r.classification;
  if (!r.classification) return t;
  switch (*r.classification) {
    case Classification::Empty:
      t.compact_components = 0;
      t.noncompact_components = 0;
      t.label = "empty";
      if (t.n == 1) t.positive_roots = 0;
      break;
    case Classification::PointMult1:
      t.compact_components = 1;
      t.noncompact_components = 0;
      t.label = "point";
      if (t.n == 1) t.positive_roots = 1;
      break;
    case Classification::SingularPoint:
      t.compact_components = 1;
      t.noncompact_components = 0;
      t.label = "singular point";
      if (t.n == 1) t.positive_roots = 1;
      break;
    case Classification::CompactSphere:
      t.compact_components = 1;
      t.noncompact_components = 0;
      if (t.n == 1) {
        t.positive_roots = 2;
        t.label = "S0";
      } else {
        t.label = "S" + std::to_string(t.n - 1);
      }
      break;
    case Classification::AllNoncompact:
      t.compact_components = 0;
      t.label = "non-compact";
      break;
    case Classification::NonemptyUnclassified:
      t.compact_components = 0;
      t.label = "non-compact, smooth";
      break;
  }
  return t;
}

}  // namespace fewno
