#include "fewno/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fewno::oracle {

namespace {

void trim(DensePoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const DensePoly& p) { return static_cast<int>(p.size()) - 1; }

DensePoly primitive_part(DensePoly p) {
  trim(p);
  if (p.empty()) return p;
  Integer g = 0;
  for (const auto& c : p) g = ::gcd(g, c);
  if (p.back() < 0) g = -g;
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return p;
}

// Remainder of |lc(b)|^k a by b; keeps the sign of the remainder class.
DensePoly pseudo_remainder(DensePoly a, const DensePoly& b) {
  trim(a);
  const int db = degree(b);
  const Integer lb = b.back();
  const Integer alb = abs(lb);
  const int sb = sgn(lb);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const Integer la = a.back() * sb;
    for (auto& c : a) c *= alb;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= la * b[static_cast<std::size_t>(i)];
    trim(a);
  }
  return a;
}

// a / b for b dividing a with b primitive.
DensePoly exact_quotient(DensePoly a, const DensePoly& b) {
  trim(a);
  const int db = degree(b);
  if (degree(a) < db) return {};
  DensePoly q(static_cast<std::size_t>(degree(a) - db + 1));
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    Integer c;
    if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t())) throw std::logic_error("inexact polynomial division");
    mpz_divexact(c.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
    q[static_cast<std::size_t>(shift)] = c;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= c * b[static_cast<std::size_t>(i)];
    trim(a);
  }
  if (!a.empty()) throw std::logic_error("inexact polynomial division");
  return q;
}

// sign of p(x) for rational x
int sign_at(const DensePoly& p, const Rational& x) {
  if (p.empty()) return 0;
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  // Horner on the homogenization: sum c_i num^i den^(d-i)
  Integer acc = p.back();
  Integer denpow = 1;
  for (int i = degree(p) - 1; i >= 0; --i) {
    denpow *= den;
    acc = acc * num + p[static_cast<std::size_t>(i)] * denpow;
  }
  return sgn(acc);
}

int sign_at_infinity(const DensePoly& p, bool positive) {
  if (p.empty()) return 0;
  int s = sgn(p.back());
  if (!positive && degree(p) % 2 != 0) s = -s;
  return s;
}

std::size_t variations(const std::vector<DensePoly>& chain, const Endpoint& x, bool positive_infinity) {
  std::size_t v = 0;
  int prev = 0;
  for (const auto& p : chain) {
    int s = x ? sign_at(p, *x) : sign_at_infinity(p, positive_infinity);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

DensePoly to_dense(const SparsePolynomial& f) {
  if (f.num_vars() != 1) throw PreconditionError("univariate polynomial expected");
  Exponent lo = f[0].exponents[0], hi = f[f.size() - 1].exponents[0];
  const Exponent shift = lo < 0 ? -lo : 0;
  if (hi + shift > 100000) throw std::domain_error("degree too large for dense oracle");
  DensePoly p(static_cast<std::size_t>(hi + shift + 1));
  for (const auto& t : f.terms()) p[static_cast<std::size_t>(t.exponents[0] + shift)] = t.coefficient;
  return p;
}

DensePoly derivative(const DensePoly& p) {
  DensePoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

DensePoly gcd(const DensePoly& a, const DensePoly& b) {
  DensePoly x = primitive_part(a), y = primitive_part(b);
  if (x.empty()) return y;
  if (y.empty()) return x;
  if (degree(x) < degree(y)) std::swap(x, y);
  while (!y.empty()) {
    DensePoly r = primitive_part(pseudo_remainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return primitive_part(x);
}

DensePoly squarefree_part(const DensePoly& p) {
  DensePoly pp = primitive_part(p);
  DensePoly g = gcd(pp, derivative(pp));
  if (degree(g) <= 0) return pp;
  return primitive_part(exact_quotient(pp, g));
}

std::vector<DensePoly> sturm_chain(const DensePoly& p) {
  std::vector<DensePoly> chain;
  DensePoly p0 = squarefree_part(p);
  if (p0.empty()) throw PreconditionError("zero polynomial");
  chain.push_back(p0);
  DensePoly p1 = derivative(p0);
  if (p1.empty()) return chain;
  chain.push_back(primitive_part(p1));
  while (true) {
    DensePoly r = pseudo_remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    // divide by the positive content only
    Integer g = 0;
    for (const auto& c : r) g = ::gcd(g, c);
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    chain.push_back(std::move(r));
  }
  return chain;
}

std::size_t sturm_count(const DensePoly& p, const Endpoint& l, const Endpoint& r) {
  if (l && r && *l >= *r) return 0;
  auto chain = sturm_chain(p);
  if (degree(chain.front()) <= 0) return 0;
  std::size_t vl = variations(chain, l, false);
  std::size_t vr = variations(chain, r, true);
  return vl >= vr ? vl - vr : 0;
}

std::size_t sturm_count(const SparsePolynomial& f, const Endpoint& l, const Endpoint& r) {
  const bool laurent = f.is_laurent();
  if (laurent && !(l && *l >= 0)) throw PreconditionError("Laurent polynomial needs an interval in (0, inf)");
  return sturm_count(to_dense(f), l, r);
}

PositiveRoots positive_roots(const SparsePolynomial& f) {
  DensePoly p = to_dense(f);
  PositiveRoots out;
  out.distinct = sturm_count(p, Rational(0), std::nullopt);
  DensePoly g = gcd(p, derivative(p));
  if (degree(g) > 0) out.multiple = sturm_count(g, Rational(0), std::nullopt);
  return out;
}

std::optional<GridCertificate> grid_scan(const SparsePolynomial& f, std::span<const std::pair<Rational, Rational>> box,
                                         const Rational& step) {
  const std::size_t n = f.num_vars();
  if (box.size() != n) throw PreconditionError("box has wrong dimension");
  if (step <= 0) throw PreconditionError("grid step must be positive");
  std::vector<std::size_t> count(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (box[i].first > box[i].second) throw PreconditionError("empty box");
    Rational span = (box[i].second - box[i].first) / step;
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), span.get_num_mpz_t(), span.get_den_mpz_t());
    if (k > (1 << 26)) throw std::domain_error("grid too large");
    count[i] = k.get_ui() + 1;
    total *= count[i];
    if (total > (std::size_t{1} << 26)) throw std::domain_error("grid too large");
  }
  // exponent shifts clear negative powers; need positive coordinates then
  std::vector<Exponent> lo(n, 0), hi(n, 0);
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], t.exponents[i]);
      hi[i] = std::max(hi[i], t.exponents[i]);
    }
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] < 0 && box[i].first <= 0) throw PreconditionError("Laurent grid must stay in the positive orthant");

  // coordinate value k: (num_i + k*stepnum_i) / den_i
  std::vector<Integer> den(n), base(n), inc(n);
  for (std::size_t i = 0; i < n; ++i) {
    den[i] = lcm(box[i].first.get_den(), step.get_den());
    base[i] = box[i].first.get_num() * (den[i] / box[i].first.get_den());
    inc[i] = step.get_num() * (den[i] / step.get_den());
  }
  // per coordinate, exponent e -> column of num^e' den^(E-e') with e' = e - lo
  std::vector<std::map<Exponent, std::vector<Integer>>> table(n);
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < n; ++i) table[i][t.exponents[i]];
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned long top = static_cast<unsigned long>(hi[i] - lo[i]);
    for (auto& [e, col] : table[i]) {
      const unsigned long ee = static_cast<unsigned long>(e - lo[i]);
      col.resize(count[i]);
      Integer dp;
      mpz_pow_ui(dp.get_mpz_t(), den[i].get_mpz_t(), top - ee);
      for (std::size_t k = 0; k < count[i]; ++k) {
        Integer num = base[i] + inc[i] * static_cast<unsigned long>(k);
        mpz_pow_ui(col[k].get_mpz_t(), num.get_mpz_t(), ee);
        col[k] *= dp;
      }
    }
  }
  std::vector<std::vector<const std::vector<Integer>*>> cols(f.size(), std::vector<const std::vector<Integer>*>(n));
  for (std::size_t j = 0; j < f.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = &table[i].at(f[j].exponents[i]);

  auto point = [&](const std::vector<std::size_t>& idx) {
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = Rational(base[i] + inc[i] * static_cast<unsigned long>(idx[i]), den[i]);
      x[i].canonicalize();
    }
    return x;
  };
  // Laurent shift multiplies by prod x_i^(-lo_i) > 0; the den powers are
  // positive; so the integer below has the sign of f.
  std::vector<signed char> signs(total);
  std::vector<std::size_t> idx(n, 0);
  Integer acc, prod;
  for (std::size_t flat = 0; flat < total; ++flat) {
    acc = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      prod = f[j].coefficient;
      for (std::size_t i = 0; i < n; ++i) prod *= (*cols[j][i])[idx[i]];
      acc += prod;
    }
    signs[flat] = static_cast<signed char>(sgn(acc));
    if (signs[flat] == 0) return GridCertificate{true, point(idx), point(idx)};
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] < count[i]) break;
      idx[i] = 0;
    }
  }
  // neighbours along each axis; flat index is little-endian in idx
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = 1; i < n; ++i) stride[i] = stride[i - 1] * count[i - 1];
  std::fill(idx.begin(), idx.end(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t i = 0; i < n; ++i) {
      if (idx[i] + 1 >= count[i]) continue;
      if (signs[flat] * signs[flat + stride[i]] < 0) {
        auto q = idx;
        ++q[i];
        return GridCertificate{false, point(idx), point(q)};
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] < count[i]) break;
      idx[i] = 0;
    }
  }
  return std::nullopt;
}

int exact_product_compare(std::span<const Integer> alphas, std::span<const Integer> betas, std::span<const Integer> us,
                          std::span<const Integer> vs) {
  if (alphas.size() != us.size() || betas.size() != vs.size()) throw PreconditionError("length mismatch");
  auto expand = [](std::span<const Integer> b, std::span<const Integer> e) {
    Integer p = 1, t;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (e[i] < 0 || e[i] > 10000 || abs(b[i]) > 1000) throw std::domain_error("outside the oracle's guarded range");
      if (b[i] == 0 && e[i] == 0) throw PreconditionError("0^0 term");
      mpz_pow_ui(t.get_mpz_t(), b[i].get_mpz_t(), e[i].get_ui());
      p *= t;
    }
    return p;
  };
  return sgn(Integer(expand(alphas, us) - expand(betas, vs)));
}

}  // namespace fewno::oracle
