#include "fewno/geometry.hpp"

#include <algorithm>
#include <set>

namespace fewno {

namespace {

IntMatrix difference_matrix(const PointSet& a, std::size_t base) {
  // rows are a_j - a_base, j != base
  const std::size_t n = a.ambient_dim();
  IntMatrix d(a.size() - 1, n);
  std::size_t r = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j == base) continue;
    for (std::size_t k = 0; k < n; ++k) d(r, k) = to_integer(a[j][k]) - to_integer(a[base][k]);
    ++r;
  }
  return d;
}

Integer dot(std::span<const Integer> w, const ExponentVector& a) {
  Integer s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += w[k] * to_integer(a[k]);
  return s;
}

Integer dot(std::span<const Exponent> w, const ExponentVector& a) {
  Integer s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += to_integer(w[k]) * to_integer(a[k]);
  return s;
}

void fill_sign_classes(CircuitData& c) {
  c.positive_indices.clear();
  c.negative_indices.clear();
  for (std::size_t i = 0; i < c.relation.size(); ++i)
    (c.relation[i] > 0 ? c.positive_indices : c.negative_indices).push_back(i);
}

}  // namespace

CircuitData make_circuit(const PointSet& b) {
  CircuitData c{b, circuit_relation(b), {}, {}};
  fill_sign_classes(c);
  return c;
}

CircuitData make_circuit(const PointSet& b, std::vector<Integer> relation) {
  if (relation.size() != b.size()) throw PreconditionError("relation length mismatch");
  Integer sum = 0, g = 0;
  for (const auto& m : relation) {
    if (m == 0) throw PreconditionError("relation has a zero entry");
    sum += m;
    g = gcd(g, m);
  }
  if (sum != 0 || g != 1) throw PreconditionError("relation is not primitive with zero sum");
  for (std::size_t k = 0; k < b.ambient_dim(); ++k) {
    Integer s = 0;
    for (std::size_t j = 0; j < b.size(); ++j) s += relation[j] * to_integer(b[j][k]);
    if (s != 0) throw PreconditionError("relation does not annihilate the points");
  }
  // uniqueness: the relation lattice must have rank one
  circuit_relation(b);
  CircuitData c{b, std::move(relation), {}, {}};
  fill_sign_classes(c);
  return c;
}

std::size_t affine_dim(const PointSet& a) {
  if (a.empty()) throw PreconditionError("affine dimension of an empty set");
  if (a.size() == 1) return 0;
  return rank(difference_matrix(a, 0));
}

bool affinely_independent(const PointSet& a) { return affine_dim(a) + 1 == a.size(); }

std::optional<CircuitInSupport> find_circuit(const PointSet& a) {
  if (a.empty()) throw PreconditionError("empty point set");
  const std::size_t n = a.ambient_dim();
  IntMatrix hom(n + 1, a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    hom(0, j) = 1;
    for (std::size_t i = 0; i < n; ++i) hom(i + 1, j) = to_integer(a[j][i]);
  }
  auto ker = integer_kernel(hom);
  if (ker.empty()) return std::nullopt;
  if (ker.size() > 1) throw PreconditionError("support has more than dim+2 points");
  auto m = primitive(std::move(ker.front()));
  CircuitInSupport out;
  std::vector<Integer> rel;
  for (std::size_t j = 0; j < m.size(); ++j)
    if (m[j] != 0) {
      out.indices.push_back(j);
      rel.push_back(m[j]);
    }
  out.circuit.points = a.subset(out.indices);
  out.circuit.relation = std::move(rel);
  fill_sign_classes(out.circuit);
  return out;
}

std::optional<std::size_t> interior_point(const CircuitData& c) {
  if (c.positive_indices.size() == 1) return c.positive_indices.front();
  if (c.negative_indices.size() == 1) return c.negative_indices.front();
  return std::nullopt;
}

SignDistribution sign_distribution(const SparsePolynomial& f) {
  SignDistribution s;
  for (const auto& t : f.terms()) s.push_back(sgn(t.coefficient));
  return s;
}

std::optional<std::size_t> caged_alternation(const CircuitData& c, std::span<const int> signs) {
  if (signs.size() != c.points.size()) throw PreconditionError("sign distribution length mismatch");
  auto i = interior_point(c);
  if (!i) return std::nullopt;
  for (std::size_t j = 0; j < signs.size(); ++j)
    if (j != *i && signs[j] == signs[*i]) return std::nullopt;
  return i;
}

std::vector<ExponentVector> facet_normals(const PointSet& a) {
  const std::size_t n = a.ambient_dim();
  if (a.empty() || affine_dim(a) != n) throw PreconditionError("facet normals need a full-dimensional support");
  if (a.size() > n + 2) throw PreconditionError("facet normals need #A <= n+2");
  std::vector<ExponentVector> out;
  std::set<ExponentVector> seen;
  // every facet contains n affinely independent points of A
  std::vector<std::size_t> pick(n);
  std::vector<bool> mask(a.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
  do {
    std::size_t k = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (mask[j]) pick[k++] = j;
    IntMatrix d(n - 1, n);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) d(r - 1, c) = to_integer(a[pick[r]][c]) - to_integer(a[pick[0]][c]);
    auto ker = integer_kernel(d);
    if (ker.size() != 1) continue;
    auto w = primitive(ker.front());
    Integer v0 = dot(w, a[pick[0]]);
    bool above = true, below = true;
    for (const auto& p : a) {
      Integer v = dot(w, p);
      if (v < v0) above = false;
      if (v > v0) below = false;
    }
    if (above == below) continue;  // both sides, or all on the hyperplane
    ExponentVector e(n);
    for (std::size_t c = 0; c < n; ++c) e[c] = to_exponent(above ? w[c] : Integer(-w[c]));
    if (seen.insert(e).second) out.push_back(std::move(e));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

std::vector<std::size_t> face_indices(const PointSet& a, std::span<const Exponent> w) {
  if (w.size() != a.ambient_dim()) throw PreconditionError("weight has wrong dimension");
  std::vector<std::size_t> idx;
  Integer best;
  for (std::size_t j = 0; j < a.size(); ++j) {
    Integer v = dot(w, a[j]);
    if (idx.empty() || v < best) {
      idx.assign(1, j);
      best = v;
    } else if (v == best) {
      idx.push_back(j);
    }
  }
  return idx;
}

SparsePolynomial initial_form(const SparsePolynomial& f, std::span<const Exponent> w) {
  if (std::all_of(w.begin(), w.end(), [](Exponent e) { return e == 0; }))
    throw PreconditionError("initial form needs a nonzero weight");
  auto idx = face_indices(support(f), w);
  std::vector<Term> terms;
  for (std::size_t j : idx) terms.push_back(f[j]);
  return SparsePolynomial(f.num_vars(), std::move(terms));
}

std::optional<std::vector<Integer>> vertex_weight(const PointSet& a, std::size_t i) {
  const std::size_t n = a.ambient_dim();
  if (a.size() == 1) return std::vector<Integer>(n, 0);
  // Work in the affine hull: rows of U beyond the rank annihilate every
  // difference, the first d rows give full-dimensional coordinates.
  IntMatrix diffs = difference_matrix(a, 0).transpose();
  auto hf = hermite_factor(diffs);
  const std::size_t d = hf.rank;
  std::vector<ExponentVector> local;
  for (std::size_t j = 0; j < a.size(); ++j) {
    ExponentVector p(d);
    for (std::size_t r = 0; r < d; ++r) {
      Integer s = 0;
      for (std::size_t c = 0; c < n; ++c) s += hf.U(r, c) * (to_integer(a[j][c]) - to_integer(a[0][c]));
      p[r] = to_exponent(s);
    }
    local.push_back(std::move(p));
  }
  PointSet la(std::move(local));
  std::vector<Integer> wl(d, 0);
  if (d == 1) {
    // segment or three collinear points
    Exponent mn = la[0][0], mx = la[0][0];
    for (const auto& p : la) {
      mn = std::min(mn, p[0]);
      mx = std::max(mx, p[0]);
    }
    if (la[i][0] == mn) wl[0] = 1;
    else if (la[i][0] == mx) wl[0] = -1;
    else return std::nullopt;
  } else {
    bool incident = false;
    for (const auto& w : facet_normals(la)) {
      auto face = face_indices(la, w);
      if (std::find(face.begin(), face.end(), i) == face.end()) continue;
      incident = true;
      for (std::size_t r = 0; r < d; ++r) wl[r] += w[r];
    }
    if (!incident) return std::nullopt;
  }
  // pull back: w = U_top^T wl
  std::vector<Integer> w(n, 0);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < d; ++r) w[c] += hf.U(r, c) * wl[r];
  Integer vi = dot(w, a[i]);
  for (std::size_t j = 0; j < a.size(); ++j)
    if (j != i && dot(w, a[j]) <= vi) return std::nullopt;
  return w;
}

}  // namespace fewno
