#include "fewno/discriminant.hpp"

#include <cmath>

namespace fewno {

namespace {

struct Products {
  // L = prod left_base^left_exp, R = prod right_base^right_exp
  std::vector<Integer> left_base, left_exp, right_base, right_exp;
};

Products products(const CircuitDiscriminant& d) {
  Products p;
  const auto& m = d.circuit.relation;
  const auto& c = d.coefficients;
  for (std::size_t i : d.circuit.positive_indices) {
    p.left_base.push_back(m[i]);
    p.left_exp.push_back(m[i]);
    p.right_base.push_back(c[i]);
    p.right_exp.push_back(m[i]);
  }
  for (std::size_t i : d.circuit.negative_indices) {
    p.left_base.push_back(c[i]);
    p.left_exp.push_back(-m[i]);
    p.right_base.push_back(m[i]);
    p.right_exp.push_back(-m[i]);
  }
  return p;
}

int product_sign(const std::vector<Integer>& base, const std::vector<Integer>& exp) {
  int s = 1;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (base[i] < 0 && mpz_odd_p(exp[i].get_mpz_t())) s = -s;
  return s;
}

std::vector<Integer> magnitudes(const std::vector<Integer>& v) {
  std::vector<Integer> out;
  for (const auto& x : v) out.push_back(abs(x));
  return out;
}

Rational rational_pow(const Rational& x, const Integer& e) {
  if (!e.fits_slong_p()) throw std::overflow_error("exponent too large for rational power");
  long k = e.get_si();
  unsigned long a = static_cast<unsigned long>(k < 0 ? -k : k);
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), a);
  r.canonicalize();
  return k < 0 ? Rational(1 / r) : r;
}

double log_abs(const Rational& q) {
  long en, ed;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

// Exact r-th root of a positive rational, if it exists.
std::optional<Rational> exact_root(const Rational& q, const Integer& r) {
  if (!r.fits_ulong_p()) return std::nullopt;
  unsigned long k = r.get_ui();
  Rational out;
  if (mpz_root(out.get_num_mpz_t(), q.get_num_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(out.get_den_mpz_t(), q.get_den_mpz_t(), k) == 0) return std::nullopt;
  out.canonicalize();
  return out;
}

struct BinomialSystem {
  std::size_t n = 0;
  IntMatrix exps;                // n x n+1, columns b_i - b_0
  std::vector<Rational> ratios;  // n+1
  SmithFactorization smith;
};

BinomialSystem binomial_system(const CircuitDiscriminant& d) {
  const auto& pts = d.circuit.points;
  const std::size_t k = pts.size();
  const std::size_t n = pts.ambient_dim();
  if (k != n + 2) throw PreconditionError("degenerate point needs a circuit spanning its ambient space");
  if (!adisc_vanish(d)) throw PreconditionError("discriminant does not vanish");
  BinomialSystem sys;
  sys.n = n;
  sys.exps = IntMatrix(n, n + 1);
  const auto& m = d.circuit.relation;
  const auto& c = d.coefficients;
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) sys.exps(j, i - 1) = to_integer(pts[i][j]) - to_integer(pts[0][j]);
    // gradient ratio: d_i Delta / d_0 Delta = m_i c_0 / (m_0 c_i) on Delta = 0
    Rational r(m[i] * c[0], m[0] * c[i]);
    r.canonicalize();
    sys.ratios.push_back(r);
  }
  sys.smith = smith_factor(sys.exps);
  if (sys.smith.rank != n) throw PreconditionError("circuit does not span its ambient space");
  return sys;
}

bool orthant_matches(const BinomialSystem& sys, const std::vector<int>& orthant) {
  for (std::size_t i = 0; i <= sys.n; ++i) {
    bool odd = false;
    for (std::size_t j = 0; j < sys.n; ++j)
      if (orthant[j] < 0 && mpz_odd_p(sys.exps(j, i).get_mpz_t())) odd = !odd;
    if ((sys.ratios[i] < 0) != odd) return false;
  }
  return true;
}

DegeneratePoint solve_in_orthant(const BinomialSystem& sys, const std::vector<int>& orthant) {
  const std::size_t n = sys.n;
  std::vector<Rational> rho(n + 1, Rational(1));
  for (std::size_t kk = 0; kk <= n; ++kk)
    for (std::size_t i = 0; i <= n; ++i)
      if (sys.smith.V(i, kk) != 0) rho[kk] *= rational_pow(abs(sys.ratios[i]), sys.smith.V(i, kk));
  if (rho[n] != 1) throw std::logic_error("binomial system inconsistent although the discriminant vanishes");

  DegeneratePoint p;
  p.orthant = orthant;
  p.exponent_map = sys.smith.U;
  bool all_exact = true;
  std::vector<Rational> eta(n);
  for (std::size_t kk = 0; kk < n; ++kk) {
    p.radicands.push_back(rho[kk]);
    p.roots.push_back(sys.smith.S(kk, kk));
    auto r = exact_root(rho[kk], sys.smith.S(kk, kk));
    if (r) eta[kk] = *r;
    else all_exact = false;
  }
  if (all_exact) {
    std::vector<Rational> z(n, Rational(1));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t kk = 0; kk < n; ++kk)
        if (p.exponent_map(kk, j) != 0) z[j] *= rational_pow(eta[kk], p.exponent_map(kk, j));
      if (orthant[j] < 0) z[j] = -z[j];
    }
    p.exact = z;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double lg = 0;
    for (std::size_t kk = 0; kk < n; ++kk)
      lg += p.exponent_map(kk, j).get_d() * log_abs(p.radicands[kk]) / p.roots[kk].get_d();
    p.approx.push_back(orthant[j] * std::exp(lg));
  }
  return p;
}

}  // namespace

CircuitDiscriminant make_discriminant(CircuitData circuit, std::vector<Integer> coefficients) {
  if (coefficients.size() != circuit.points.size()) throw PreconditionError("coefficient count mismatch");
  for (const auto& c : coefficients)
    if (c == 0) throw PreconditionError("zero coefficient");
  return {std::move(circuit), std::move(coefficients)};
}

bool adisc_vanish(const CircuitDiscriminant& d) {
  Products p = products(d);
  return binomial_vanish(p.left_base, p.right_base, p.left_exp, p.right_exp);
}

int adisc_sign(const CircuitDiscriminant& d, const SignOptions& options) {
  Products p = products(d);
  const int sl = product_sign(p.left_base, p.left_exp);
  const int sr = product_sign(p.right_base, p.right_exp);
  if (sl != sr) return sl;
  return sl * binomial_sign(magnitudes(p.left_base), magnitudes(p.right_base), p.left_exp, p.right_exp, options);
}

namespace {

std::optional<CircuitDiscriminant> full_circuit(const PointSet& a, const std::vector<Integer>& c) {
  auto found = find_circuit(a);
  if (!found || found->indices.size() != a.size()) return std::nullopt;
  return make_discriminant(found->circuit, c);
}

}  // namespace

bool support_disc_vanish(const PointSet& a, const std::vector<Integer>& c) {
  auto d = full_circuit(a, c);
  return d ? adisc_vanish(*d) : false;
}

int support_disc_sign(const PointSet& a, const std::vector<Integer>& c, const SignOptions& options) {
  auto d = full_circuit(a, c);
  return d ? adisc_sign(*d, options) : 1;
}

DegeneratePoint degenerate_point(const CircuitDiscriminant& d, std::vector<int> orthant) {
  BinomialSystem sys = binomial_system(d);
  if (orthant.empty()) orthant.assign(sys.n, 1);
  if (orthant.size() != sys.n) throw PreconditionError("orthant has wrong dimension");
  if (!orthant_matches(sys, orthant)) throw std::domain_error("no degenerate point in the requested orthant");
  return solve_in_orthant(sys, orthant);
}

std::vector<DegeneratePoint> degenerate_points(const CircuitDiscriminant& d) {
  BinomialSystem sys = binomial_system(d);
  if (sys.n > 20) throw PreconditionError("too many orthants to enumerate");
  std::vector<DegeneratePoint> out;
  for (unsigned long mask = 0; mask < (1ul << sys.n); ++mask) {
    std::vector<int> orthant(sys.n);
    for (std::size_t j = 0; j < sys.n; ++j) orthant[j] = (mask >> j) & 1 ? -1 : 1;
    if (orthant_matches(sys, orthant)) out.push_back(solve_in_orthant(sys, orthant));
  }
  return out;
}

}  // namespace fewno
