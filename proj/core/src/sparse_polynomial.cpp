#include "fewno/sparse_polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>

namespace fewno {

Integer to_integer(Exponent e) {
  Integer r;
  // mpz_class has no int64 constructor on every platform; go through strings
  // only when the value does not fit a long.
  if (e >= std::numeric_limits<long>::min() && e <= std::numeric_limits<long>::max()) {
    r = static_cast<long>(e);
  } else {
    r = Integer(std::to_string(e));
  }
  return r;
}

Exponent to_exponent(const Integer& v) {
  if (v.fits_slong_p() && sizeof(long) >= sizeof(Exponent)) return static_cast<Exponent>(v.get_si());
  static const Integer lo = to_integer(std::numeric_limits<Exponent>::min());
  static const Integer hi = to_integer(std::numeric_limits<Exponent>::max());
  if (v < lo || v > hi) throw std::overflow_error("exponent out of 64-bit range: " + v.get_str());
  return std::stoll(v.get_str());
}

PointSet::PointSet(std::vector<ExponentVector> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != points_.front().size())
      throw PreconditionError("point set: inconsistent dimensions");
    for (std::size_t j = 0; j < i; ++j)
      if (points_[i] == points_[j]) throw PreconditionError("point set: repeated point");
  }
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  std::vector<ExponentVector> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(points_.at(i));
  return PointSet(std::move(out));
}

SparsePolynomial::SparsePolynomial(std::size_t n, std::vector<Term> terms) : n_(n) {
  if (n == 0) throw PreconditionError("polynomial needs at least one variable");
  std::map<ExponentVector, Integer> merged;
  for (auto& t : terms) {
    if (t.exponents.size() != n) throw PreconditionError("term has wrong number of exponents");
    merged[t.exponents] += t.coefficient;
  }
  for (auto& [a, c] : merged)
    if (c != 0) terms_.push_back(Term{a, c});
  if (terms_.empty()) throw std::domain_error("zero polynomial");
}

bool SparsePolynomial::is_laurent() const {
  for (const auto& t : terms_)
    for (Exponent e : t.exponents)
      if (e < 0) return true;
  return false;
}

bool SparsePolynomial::has_constant_term() const {
  // lexicographically smallest nonnegative vector is O, but Laurent terms may
  // precede it, so search.
  for (const auto& t : terms_)
    if (std::all_of(t.exponents.begin(), t.exponents.end(), [](Exponent e) { return e == 0; }))
      return true;
  return false;
}

SparsePolynomial SparsePolynomial::shifted(const ExponentVector& shift) const {
  if (shift.size() != n_) throw PreconditionError("shift has wrong dimension");
  std::vector<Term> out = terms_;
  for (auto& t : out)
    for (std::size_t i = 0; i < n_; ++i) {
      Exponent r;
      if (__builtin_add_overflow(t.exponents[i], shift[i], &r)) throw std::overflow_error("exponent overflow");
      t.exponents[i] = r;
    }
  return SparsePolynomial(n_, std::move(out));
}

SparsePolynomial SparsePolynomial::negated() const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coefficient = -t.coefficient;
  return SparsePolynomial(n_, std::move(out));
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  SparsePolynomial run(std::size_t min_vars) {
    std::vector<std::pair<std::map<std::size_t, Integer>, Integer>> raw;
    skip();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
      skip();
    }
    if (eof()) fail("empty expression");
    raw.push_back(term(negative));
    skip();
    while (!eof()) {
      char op = peek();
      if (op != '+' && op != '-') fail(std::string("unexpected character '") + op + "'");
      get();
      skip();
      raw.push_back(term(op == '-'));
      skip();
    }
    std::size_t n = std::max<std::size_t>({max_index_, min_vars, 1});
    std::vector<Term> terms;
    for (auto& [exps, c] : raw) {
      ExponentVector a(n, 0);
      for (auto& [i, e] : exps) a[i - 1] = to_exponent(e);
      terms.push_back(Term{std::move(a), c});
    }
    try {
      return SparsePolynomial(n, std::move(terms));
    } catch (const std::domain_error&) {
      throw ParseError("all terms cancel (zero polynomial)", s_.size());
    }
  }

 private:
  std::pair<std::map<std::size_t, Integer>, Integer> term(bool negative) {
    Integer coeff = 1;
    std::map<std::size_t, Integer> exps;
    bool have_factor = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = integer();
      skip();
      if (peek() == '*') {
        get();
        skip();
        factor(exps);
        have_factor = true;
      } else if (peek() == 'x') {
        factor(exps);
        have_factor = true;
      }
    } else if (peek() == 'x') {
      factor(exps);
      have_factor = true;
    } else {
      fail("expected a term");
    }
    if (have_factor) {
      skip();
      while (peek() == '*') {
        get();
        skip();
        factor(exps);
        skip();
      }
    }
    if (negative) coeff = -coeff;
    return {std::move(exps), coeff};
  }

  void factor(std::map<std::size_t, Integer>& exps) {
    if (peek() != 'x') fail("expected variable");
    get();
    std::size_t at = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index");
    Integer idx = integer();
    if (idx < 1 || !idx.fits_ulong_p() || idx > 1000000) throw ParseError("variable index out of range", at);
    std::size_t i = idx.get_ui();
    max_index_ = std::max(max_index_, i);
    Integer e = 1;
    skip();
    if (peek() == '^') {
      get();
      skip();
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        get();
        skip();
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
      e = integer();
      if (neg) e = -e;
    }
    exps[i] += e;
    try {
      to_exponent(exps[i]);
    } catch (const std::overflow_error&) {
      throw ParseError("exponent out of range", at);
    }
  }

  Integer integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) get();
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  void skip() {
    while (!eof() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t max_index_ = 0;
};

}  // namespace

SparsePolynomial parse_polynomial(std::string_view text, std::size_t min_vars) {
  return Parser(text).run(min_vars);
}

std::string to_string(const SparsePolynomial& f, std::span<const std::string> names) {
  if (names.size() != f.num_vars()) throw PreconditionError("wrong number of variable names");
  std::ostringstream out;
  bool first = true;
  for (const auto& t : f.terms()) {
    Integer c = t.coefficient;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    Integer mag = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      Exponent e = t.exponents[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[i];
      if (e != 1) mono += '^' + std::to_string(e);
    }
    if (mono.empty()) {
      out << mag.get_str();
    } else {
      if (mag != 1) out << mag.get_str() << '*';
      out << mono;
    }
  }
  return out.str();
}

std::string to_string(const SparsePolynomial& f) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < f.num_vars(); ++i) names.push_back("x" + std::to_string(i + 1));
  return to_string(f, names);
}

PointSet support(const SparsePolynomial& f) {
  std::vector<ExponentVector> pts;
  for (const auto& t : f.terms()) pts.push_back(t.exponents);
  return PointSet(std::move(pts));
}

namespace {

Rational rational_power(const Rational& x, Exponent e) {
  if (e == 0) return 1;
  if (x == 0) {
    if (e < 0) throw std::domain_error("division by zero in Laurent term");
    return 0;
  }
  if (e < 0 && e == std::numeric_limits<Exponent>::min()) throw std::overflow_error("exponent too large");
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), k);
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

}  // namespace

Rational evaluate(const SparsePolynomial& f, std::span<const Rational> x) {
  if (x.size() != f.num_vars()) throw PreconditionError("point has wrong dimension");
  Rational sum = 0;
  for (const auto& t : f.terms()) {
    Rational v = t.coefficient;
    for (std::size_t i = 0; i < x.size() && v != 0; ++i) v *= rational_power(x[i], t.exponents[i]);
    // a zero factor must still reject later negative exponents
    if (v == 0)
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] == 0 && t.exponents[i] < 0) throw std::domain_error("division by zero in Laurent term");
    sum += v;
  }
  return sum;
}

Integer evaluate_integer(const SparsePolynomial& f, std::span<const Integer> x) {
  if (x.size() != f.num_vars()) throw PreconditionError("point has wrong dimension");
  Integer sum = 0;
  Integer p;
  for (const auto& t : f.terms()) {
    Integer v = t.coefficient;
    for (std::size_t i = 0; i < x.size(); ++i) {
      Exponent e = t.exponents[i];
      if (e == 0) continue;
      if (e < 0) {
        if (abs(x[i]) != 1) throw std::domain_error("non-integer value at integer point");
        if (e % 2 != 0 && x[i] < 0) v = -v;
        continue;
      }
      mpz_pow_ui(p.get_mpz_t(), x[i].get_mpz_t(), static_cast<unsigned long>(e));
      v *= p;
      if (v == 0) break;
    }
    sum += v;
  }
  return sum;
}

int sign_at(const SparsePolynomial& f, std::span<const Rational> x) { return sgn(evaluate(f, x)); }

std::size_t integer_bits(const Integer& v) {
  std::size_t b = v == 0 ? 1 : mpz_sizeinbase(v.get_mpz_t(), 2);
  return b + (v < 0 ? 1 : 0);
}

std::size_t integer_bits(Exponent v) {
  if (v == 0) return 1;
  std::uint64_t mag = v < 0 ? (~static_cast<std::uint64_t>(v) + 1) : static_cast<std::uint64_t>(v);
  return static_cast<std::size_t>(64 - __builtin_clzll(mag)) + (v < 0 ? 1 : 0);
}

std::size_t bit_size(const SparsePolynomial& f) {
  std::size_t total = 0;
  for (const auto& t : f.terms()) {
    total += integer_bits(t.coefficient);
    for (Exponent e : t.exponents) total += integer_bits(e);
  }
  return total;
}

}  // namespace fewno
