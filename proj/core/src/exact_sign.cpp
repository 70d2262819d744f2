#include "fewno/exact_sign.hpp"

#include <algorithm>
#include <map>

namespace fewno {

namespace {

std::size_t bitlen(const Integer& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

void check_lengths(std::span<const Integer> alphas, std::span<const Integer> betas, std::span<const Integer> us,
                   std::span<const Integer> vs) {
  if (alphas.size() != us.size() || betas.size() != vs.size())
    throw PreconditionError("each base list needs one exponent per base");
  for (const auto& e : us)
    if (e < 0) throw PreconditionError("exponents must be nonnegative");
  for (const auto& e : vs)
    if (e < 0) throw PreconditionError("exponents must be nonnegative");
}

// Fixed-point atanh(p/q) for 0 <= p/q <= 1/3 at scale 2^-w. Returns the
// truncated sum; err receives a bound on the absolute error in ulps.
Integer atanh_fixed(const Integer& p, const Integer& q, std::size_t w, Integer& err) {
  if (p == 0) {
    err = 0;
    return 0;
  }
  Integer power = p;
  power <<= w;
  mpz_fdiv_q(power.get_mpz_t(), power.get_mpz_t(), q.get_mpz_t());
  Integer sum = power;
  const Integer p2 = p * p, q2 = q * q;
  unsigned long j = 1;
  Integer term;
  while (true) {
    power *= p2;
    mpz_fdiv_q(power.get_mpz_t(), power.get_mpz_t(), q2.get_mpz_t());
    if (power == 0) break;
    mpz_fdiv_q_ui(term.get_mpz_t(), power.get_mpz_t(), 2 * j + 1);
    sum += term;
    ++j;
  }
  // each truncation loses < 2 ulps per term, the dropped tail is < 2 ulps
  err = 3 * Integer(static_cast<unsigned long>(j)) + 6;
  return sum;
}

struct Ln2Cache {
  std::size_t scale = 0;
  Integer value;
  Integer err;
};

// ln 2 = 2 atanh(1/3), cached at the widest scale requested so far.
Integer ln2_fixed(std::size_t w, Integer& err) {
  thread_local Ln2Cache cache;
  if (cache.scale < w) {
    Integer e;
    Integer v = atanh_fixed(1, 3, w + 8, e);
    cache.scale = w + 8;
    cache.value = 2 * v;
    cache.err = 2 * e;
  }
  std::size_t drop = cache.scale - w;
  Integer v = cache.value >> drop;
  Integer e = cache.err >> drop;
  err = e + 2;
  return v;
}

}  // namespace

FixedLog log_fixed(const Integer& n, std::size_t bits) {
  if (n < 1) throw PreconditionError("logarithm needs n >= 1");
  if (n == 1) return {0, 1, bits};
  const std::size_t k = bitlen(n) - 1;
  Integer pow2 = 1;
  pow2 <<= k;
  const Integer p = n - pow2, q = n + pow2;
  std::size_t guard = 8 + bitlen(Integer(static_cast<unsigned long>(k + 2))) + bitlen(Integer(static_cast<unsigned long>(bits + 8)));
  while (true) {
    const std::size_t w = bits + guard;
    Integer ea, el;
    Integer a = atanh_fixed(p, q, w, ea);
    Integer l2 = ln2_fixed(w, el);
    const Integer kk = static_cast<unsigned long>(k);
    Integer mid = kk * l2 + 2 * a;
    Integer rad = kk * el + 2 * ea;
    if (rad == 0) rad = 1;
    if (bitlen(rad) <= guard) return {mid, rad, w};
    guard = bitlen(rad) + 2;
  }
}

LogInterval log_interval(const Integer& n, std::size_t bits) {
  FixedLog fl = log_fixed(n, bits);
  Integer den = 1;
  den <<= fl.scale;
  LogInterval out;
  out.value = Rational(fl.mid, den);
  out.radius = Rational(fl.rad, den);
  out.value.canonicalize();
  out.radius.canonicalize();
  out.bits = bits;
  return out;
}

GcdFreeBasis gcd_free_basis(std::span<const Integer> alphas) {
  for (const auto& a : alphas)
    if (a < 1) throw PreconditionError("gcd-free basis needs positive integers");
  std::vector<Integer> set;
  for (const auto& a : alphas)
    if (a > 1) set.push_back(a);
  auto normalize = [](std::vector<Integer>& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    s.erase(std::remove(s.begin(), s.end(), Integer(1)), s.end());
  };
  normalize(set);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < set.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < set.size() && !changed; ++j) {
        Integer g = gcd(set[i], set[j]);
        if (g == 1) continue;
        Integer a = set[i] / g, b = set[j] / g;
        set[i] = a;
        set[j] = b;
        set.push_back(g);
        normalize(set);
        changed = true;
      }
  }
  GcdFreeBasis out;
  out.gammas = set;
  for (const auto& a : alphas) {
    std::vector<Integer> row(set.size(), 0);
    Integer rest = a;
    for (std::size_t j = 0; j < set.size(); ++j)
      row[j] = static_cast<unsigned long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), set[j].get_mpz_t()));
    if (rest != 1) throw std::logic_error("gcd-free basis does not reconstruct its input");
    out.exponents.push_back(std::move(row));
  }
  return out;
}

bool binomial_vanish(std::span<const Integer> alphas, std::span<const Integer> betas, std::span<const Integer> us,
                     std::span<const Integer> vs) {
  check_lengths(alphas, betas, us, vs);
  auto zero_side = [](std::span<const Integer> b, std::span<const Integer> e) {
    bool zero = false;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] == 0) {
        if (e[i] == 0) throw PreconditionError("0^0 term");
        zero = true;
      }
    return zero;
  };
  const bool lz = zero_side(alphas, us), rz = zero_side(betas, vs);
  if (lz || rz) return lz && rz;

  // sign parity first
  auto negative_parity = [](std::span<const Integer> b, std::span<const Integer> e) {
    bool odd = false;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] < 0 && mpz_odd_p(e[i].get_mpz_t())) odd = !odd;
    return odd;
  };
  if (negative_parity(alphas, us) != negative_parity(betas, vs)) return false;

  std::vector<Integer> all;
  for (const auto& a : alphas) all.push_back(abs(a));
  for (const auto& b : betas) all.push_back(abs(b));
  GcdFreeBasis basis = gcd_free_basis(all);
  for (std::size_t j = 0; j < basis.gammas.size(); ++j) {
    Integer lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i) lhs += us[i] * basis.exponents[i][j];
    for (std::size_t i = 0; i < betas.size(); ++i) rhs += vs[i] * basis.exponents[alphas.size() + i][j];
    if (lhs != rhs) return false;
  }
  return true;
}

int binomial_sign(std::span<const Integer> alphas, std::span<const Integer> betas, std::span<const Integer> us,
                  std::span<const Integer> vs, const SignOptions& options) {
  check_lengths(alphas, betas, us, vs);
  for (const auto& a : alphas)
    if (a < 1) throw PreconditionError("binomial sign needs bases >= 1");
  for (const auto& b : betas)
    if (b < 1) throw PreconditionError("binomial sign needs bases >= 1");

  // net exponent per distinct base; base 1 contributes nothing
  std::map<Integer, Integer, decltype([](const Integer& a, const Integer& b) { return cmp(a, b) < 0; })> net;
  for (std::size_t i = 0; i < alphas.size(); ++i)
    if (alphas[i] > 1 && us[i] != 0) net[alphas[i]] += us[i];
  for (std::size_t i = 0; i < betas.size(); ++i)
    if (betas[i] > 1 && vs[i] != 0) net[betas[i]] -= vs[i];
  Integer weight = 0;
  for (auto it = net.begin(); it != net.end();) {
    if (it->second == 0) {
      it = net.erase(it);
    } else {
      weight += abs(it->second);
      ++it;
    }
  }
  if (net.empty()) return 0;

  const std::size_t extra = bitlen(weight) + 2;
  std::size_t target = 32 + extra;
  bool vanish_checked = false;
  while (true) {
    const std::size_t bits = target + extra;
    if (bits > options.max_bits)
      throw PrecisionExhausted("sign undecided within " + std::to_string(options.max_bits) + " bits");
    std::vector<FixedLog> logs;
    std::size_t scale = 0;
    for (const auto& [base, e] : net) {
      logs.push_back(log_fixed(base, bits));
      scale = std::max(scale, logs.back().scale);
    }
    Integer mid = 0, rad = 0;
    std::size_t k = 0;
    for (const auto& [base, e] : net) {
      FixedLog& l = logs[k++];
      std::size_t up = scale - l.scale;
      mid += e * (l.mid << up);
      rad += abs(e) * (l.rad << up);
    }
    if (mpz_cmpabs(mid.get_mpz_t(), rad.get_mpz_t()) > 0) return sgn(mid);
    if (!vanish_checked) {
      vanish_checked = true;
      if (binomial_vanish(alphas, betas, us, vs)) return 0;
    }
    target *= 2;
  }
}

}  // namespace fewno
