#include "fewno/reductions.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace fewno {

namespace {

using TermMap = std::map<ExponentVector, Integer>;

TermMap to_map(const SparsePolynomial& f, std::size_t n) {
  TermMap m;
  for (const auto& t : f.terms()) {
    ExponentVector a = t.exponents;
    a.resize(n, 0);
    m[a] += t.coefficient;
  }
  return m;
}

void add_into(TermMap& acc, const TermMap& g, const Integer& scale = 1) {
  for (const auto& [a, c] : g) {
    Integer& slot = acc[a];
    slot += scale * c;
    if (slot == 0) acc.erase(a);
  }
}

TermMap mul(const TermMap& f, const TermMap& g) {
  TermMap out;
  for (const auto& [a, c] : f)
    for (const auto& [b, d] : g) {
      ExponentVector e(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
      Integer& slot = out[e];
      slot += c * d;
      if (slot == 0) out.erase(e);
    }
  return out;
}

SparsePolynomial from_map(const TermMap& m, std::size_t n) {
  std::vector<Term> terms;
  for (const auto& [a, c] : m) terms.push_back(Term{a, c});
  return SparsePolynomial(n, std::move(terms));
}

TermMap constant(std::size_t n, long c) {
  TermMap m;
  if (c != 0) m[ExponentVector(n, 0)] = c;
  return m;
}

TermMap literal(const Literal& l, std::size_t n) {
  if (l.var == 0 || l.var > n) throw PreconditionError("literal variable out of range");
  ExponentVector a(n, 0);
  a[l.var - 1] = 1;
  TermMap m;
  m[a] = l.negated ? -1 : 1;
  if (l.negated) m[ExponentVector(n, 0)] = 1;
  return m;
}

}  // namespace

SparsePolynomial add(const SparsePolynomial& f, const SparsePolynomial& g) {
  const std::size_t n = std::max(f.num_vars(), g.num_vars());
  TermMap m = to_map(f, n);
  add_into(m, to_map(g, n));
  return from_map(m, n);
}

SparsePolynomial multiply(const SparsePolynomial& f, const SparsePolynomial& g) {
  const std::size_t n = std::max(f.num_vars(), g.num_vars());
  return from_map(mul(to_map(f, n), to_map(g, n)), n);
}

Sat3Formula parse_dimacs(std::string_view text) {
  Sat3Formula phi;
  bool header = false;
  std::size_t declared = 0;
  std::vector<Literal> current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    const std::size_t line_start = pos;
    pos = end + 1;
    std::istringstream in(line);
    std::string tok;
    if (!(in >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt;
      long v = -1, c = -1;
      if (!(in >> fmt >> v >> c) || fmt != "cnf" || v < 0 || c < 0) throw ParseError("bad DIMACS header", line_start);
      phi.num_vars = static_cast<std::size_t>(v);
      declared = static_cast<std::size_t>(c);
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before DIMACS header", line_start);
    std::istringstream body(line);
    long lit;
    while (body >> lit) {
      if (lit == 0) {
        if (current.size() != 3) throw ParseError("clause does not have exactly 3 literals", line_start);
        phi.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
        continue;
      }
      std::size_t v = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      if (v > phi.num_vars) throw ParseError("literal out of range", line_start);
      current.push_back(Literal{v, lit < 0});
    }
    if (!body.eof()) throw ParseError("unexpected token in clause", line_start);
  }
  if (!header) throw ParseError("missing DIMACS header", 0);
  if (!current.empty()) throw ParseError("unterminated clause", text.size());
  if (phi.clauses.size() != declared) throw ParseError("clause count does not match header", text.size());
  return phi;
}

SparsePolynomial clause_polynomial(const Clause& clause, std::size_t num_vars) {
  TermMap f = literal(clause[0], num_vars);
  for (std::size_t k = 1; k < 3; ++k) {
    TermMap g = literal(clause[k], num_vars);
    TermMap fg = mul(f, g);
    add_into(f, g);
    add_into(f, fg, -1);
  }
  return from_map(f, num_vars);
}

PolySystem sat3_to_system(const Sat3Formula& phi) {
  const std::size_t n = std::max<std::size_t>(phi.num_vars, 1);
  PolySystem out;
  for (const auto& c : phi.clauses) {
    TermMap f = to_map(clause_polynomial(c, n), n);
    add_into(f, constant(n, 1), -1);
    out.push_back(from_map(f, n));
  }
  for (std::size_t i = 1; i <= phi.num_vars; ++i) {
    TermMap x = literal(Literal{i, false}, n);
    TermMap one_minus = literal(Literal{i, true}, n);
    out.push_back(from_map(mul(x, one_minus), n));
  }
  if (out.empty()) throw PreconditionError("empty formula");
  return out;
}

bool satisfies(const Sat3Formula& phi, std::span<const bool> assignment) {
  for (const auto& c : phi.clauses) {
    bool sat = false;
    for (const auto& l : c) sat = sat || (assignment[l.var - 1] != l.negated);
    if (!sat) return false;
  }
  return true;
}

bool brute_force_satisfiable(const Sat3Formula& phi) {
  if (phi.num_vars > 24) throw PreconditionError("too many variables for exhaustive search");
  for (unsigned long mask = 0; mask < (1ul << phi.num_vars); ++mask) {
    bool ok = true;
    for (const auto& c : phi.clauses) {
      bool sat = false;
      for (const auto& l : c) sat = sat || ((((mask >> (l.var - 1)) & 1) != 0) != l.negated);
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool has_boolean_root(const PolySystem& system) {
  std::size_t n = 0;
  for (const auto& f : system) n = std::max(n, f.num_vars());
  if (n > 24) throw PreconditionError("too many variables for exhaustive search");
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    bool root = true;
    for (const auto& f : system) {
      std::vector<Integer> x(f.num_vars());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<unsigned long>((mask >> i) & 1);
      if (evaluate_integer(f, x) != 0) {
        root = false;
        break;
      }
    }
    if (root) return true;
  }
  return false;
}

// ---------------------------------------------------------------- normal form

namespace {

// c * prod vars (vars may repeat; empty means constant)
struct Mono {
  Integer c;
  std::vector<std::size_t> vars;
};

class ShorBuilder {
 public:
  explicit ShorBuilder(std::size_t n) : n_(n) {}

  // Reduce x^a to at most two variables.
  std::vector<std::size_t> monomial(const ExponentVector& a) {
    struct Atom {
      Exponent power;
      std::size_t var;
      std::size_t index;
    };
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < 0) throw PreconditionError("normal form needs polynomial input");
      for (int k = 62; k >= 0; --k)
        if ((a[i] >> k) & 1) atoms.push_back({Exponent{1} << k, i, power_atom(i, k)});
    }
    std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.power > y.power; });
    std::vector<std::size_t> vars;
    for (const auto& at : atoms) vars.push_back(at.index);
    while (vars.size() > 2) {
      std::size_t p = product(vars[0], vars[1]);
      vars.erase(vars.begin());
      vars[0] = p;
    }
    return vars;
  }

  std::size_t product(std::size_t u, std::size_t v) {
    ExponentVector key = key_of(u);
    const ExponentVector& kv = key_of(v);
    for (std::size_t i = 0; i < n_; ++i) key[i] += kv[i];
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    return define(key, {Mono{1, {u, v}}});
  }

  // y = c1 v1 + c2 v2; no monomial key
  std::size_t split(const Mono& a, const Mono& b) { return define(std::nullopt, {a, b}); }

  void equation(std::vector<Mono> e) { originals_.push_back(std::move(e)); }

  ShorNormalForm finish() {
    const std::size_t total = n_ + defs_.size();
    ShorNormalForm out;
    out.original_vars = n_;
    out.introduced = defs_.size();
    for (std::size_t i = 0; i < n_; ++i) out.names.push_back("x" + std::to_string(i + 1));
    for (std::size_t k = 0; k < defs_.size(); ++k) out.names.push_back("y" + std::to_string(k + 1));
    auto build = [&](const std::vector<Mono>& ms, std::optional<std::size_t> lhs) {
      std::vector<Term> terms;
      if (lhs) {
        ExponentVector a(total, 0);
        a[*lhs] = 1;
        terms.push_back(Term{a, 1});
      }
      for (const auto& m : ms) {
        ExponentVector a(total, 0);
        for (std::size_t v : m.vars) ++a[v];
        terms.push_back(Term{a, lhs ? Integer(-m.c) : m.c});
      }
      return SparsePolynomial(total, std::move(terms));
    };
    for (std::size_t k = 0; k < defs_.size(); ++k) out.system.push_back(build(defs_[k], n_ + k));
    for (const auto& e : originals_) out.system.push_back(build(e, std::nullopt));
    return out;
  }

 private:
  std::size_t power_atom(std::size_t var, int k) {
    if (k == 0) return var;
    ExponentVector key(n_, 0);
    key[var] = Exponent{1} << k;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::size_t half = power_atom(var, k - 1);
    return define(key, {Mono{1, {half, half}}});
  }

  const ExponentVector& key_of(std::size_t v) {
    if (v < n_) {
      auto it = var_keys_.find(v);
      if (it == var_keys_.end()) {
        ExponentVector k(n_, 0);
        k[v] = 1;
        it = var_keys_.emplace(v, k).first;
      }
      return it->second;
    }
    return def_keys_.at(v);
  }

  std::size_t define(std::optional<ExponentVector> key, std::vector<Mono> body) {
    std::size_t idx = n_ + defs_.size();
    defs_.push_back(std::move(body));
    if (key) {
      memo_[*key] = idx;
      def_keys_[idx] = *key;
    }
    return idx;
  }

  std::size_t n_;
  std::map<ExponentVector, std::size_t> memo_;
  std::map<std::size_t, ExponentVector> var_keys_;
  std::map<std::size_t, ExponentVector> def_keys_;
  std::vector<std::vector<Mono>> defs_;
  std::vector<std::vector<Mono>> originals_;
};

// Equation k reads y_k - body = 0 with body in earlier variables.
std::vector<Rational> evaluate_definitions(const ShorNormalForm& snf, std::span<const Rational> x) {
  const std::size_t total = snf.original_vars + snf.introduced;
  std::vector<Rational> v(total, Rational(0));
  std::copy(x.begin(), x.end(), v.begin());
  for (std::size_t k = 0; k < snf.introduced; ++k) {
    const SparsePolynomial& eq = snf.system[k];
    const std::size_t y = snf.original_vars + k;
    Rational body = 0;
    for (const auto& t : eq.terms()) {
      if (t.exponents[y] == 1 && t.coefficient == 1 &&
          std::count_if(t.exponents.begin(), t.exponents.end(), [](Exponent e) { return e != 0; }) == 1)
        continue;
      Rational term = -t.coefficient;
      for (std::size_t i = 0; i < total; ++i)
        for (Exponent e = 0; e < t.exponents[i]; ++e) term *= v[i];
      body += term;
    }
    v[y] = body;
  }
  return std::vector<Rational>(v.begin() + static_cast<std::ptrdiff_t>(snf.original_vars), v.end());
}

}  // namespace

ShorNormalForm shor_normal_form(const PolySystem& system) {
  if (system.empty()) throw PreconditionError("empty system");
  std::size_t n = 0;
  for (const auto& f : system) n = std::max(n, f.num_vars());
  ShorBuilder b(n);
  for (const auto& f : system) {
    std::vector<Mono> ms;
    for (const auto& t : f.terms()) {
      ExponentVector a = t.exponents;
      a.resize(n, 0);
      ms.push_back(Mono{t.coefficient, b.monomial(a)});
    }
    if (ms.size() <= 2) {
      b.equation(std::move(ms));
      continue;
    }
    for (auto& m : ms)
      if (m.vars.size() == 2) m.vars = {b.product(m.vars[0], m.vars[1])};
    while (ms.size() > 3) {
      std::size_t y = b.split(ms[0], ms[1]);
      ms.erase(ms.begin());
      ms[0] = Mono{1, {y}};
    }
    b.equation(std::move(ms));
  }
  return b.finish();
}

std::vector<Rational> extend_root(const ShorNormalForm& snf, std::span<const Rational> x) {
  if (x.size() != snf.original_vars) throw PreconditionError("point has wrong dimension");
  return evaluate_definitions(snf, x);
}

std::size_t sparse_size(const SparsePolynomial& f) {
  std::size_t s = 0;
  for (const auto& t : f.terms()) {
    s += integer_bits(t.coefficient);
    for (Exponent e : t.exponents)
      if (e != 0) s += integer_bits(e) + 1;
  }
  return s;
}

std::size_t sparse_size(const PolySystem& system) {
  std::size_t s = 0;
  for (const auto& f : system) s += sparse_size(f);
  return s;
}

SparsePolynomial sos_aggregate(const PolySystem& system) {
  if (system.empty()) throw PreconditionError("empty system");
  std::size_t n = 0;
  for (const auto& f : system) n = std::max(n, f.num_vars());
  TermMap acc;
  for (const auto& f : system) {
    TermMap m = to_map(f, n);
    add_into(acc, mul(m, m));
  }
  return from_map(acc, n);
}

}  // namespace fewno
