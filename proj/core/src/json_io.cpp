#include "fewno/json_io.hpp"

#include <optional>

namespace fewno {

namespace {

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_string(q));
  return out;
}

Json integers(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(z.get_str());
  return out;
}

Integer integer_from(const Json& j) {
  if (j.is_number_integer()) return to_integer(j.get<Exponent>());
  if (!j.is_string()) throw ParseError("expected a decimal string", 0);
  Integer z;
  const auto s = j.get<std::string>();
  if (s.empty() || z.set_str(s, 10) != 0) throw ParseError("bad integer '" + s + "'", 0);
  return z;
}

// Point carried by the certificate, when it is exact.
std::optional<std::vector<Rational>> exact_point(const Certificate& c) {
  if (auto r = std::get_if<RationalRoot>(&c)) return r->point;
  if (auto d = std::get_if<DegeneratePoint>(&c)) return d->exact;
  return std::nullopt;
}

}  // namespace

std::string rational_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Json to_json(const SparsePolynomial& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) terms.push_back({{"c", t.coefficient.get_str()}, {"a", t.exponents}});
  return {{"n", f.num_vars()}, {"terms", std::move(terms)}};
}

SparsePolynomial polynomial_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms")) throw ParseError("polynomial needs 'n' and 'terms'", 0);
    const auto n = j.at("n").get<long long>();
    if (n < 1) throw ParseError("'n' must be positive", 0);
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      Term term{t.at("a").get<ExponentVector>(), integer_from(t.at("c"))};
      if (term.exponents.size() != static_cast<std::size_t>(n)) throw ParseError("exponent vector has wrong length", 0);
      terms.push_back(std::move(term));
    }
    return SparsePolynomial(static_cast<std::size_t>(n), std::move(terms));
  } catch (const Json::exception& e) {
    throw ParseError(e.what(), 0);
  } catch (const std::domain_error& e) {
    throw ParseError(e.what(), 0);
  }
}

Json to_json(const PolySystem& system) {
  Json out = Json::array();
  for (const auto& f : system) out.push_back(to_json(f));
  return out;
}

PolySystem system_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("system must be a JSON list", 0);
  PolySystem out;
  for (const auto& f : j) out.push_back(polynomial_from_json(f));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(integers(m.row(i)));
  return out;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be a list of rows", 0);
  std::vector<std::vector<Integer>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("matrix row must be a list", 0);
    std::vector<Integer> row;
    for (const auto& x : r) row.push_back(integer_from(x));
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("ragged matrix", 0);
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows, rows.empty() ? 0 : rows.front().size());
}

Json to_json(const Certificate& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RationalRoot>) {
          return {{"kind", "root"}, {"point", rationals(v.point)}};
        } else if constexpr (std::is_same_v<T, SignChange>) {
          return {{"kind", "sign_change"}, {"positive", rationals(v.positive)}, {"negative", rationals(v.negative)}};
        } else if constexpr (std::is_same_v<T, FacetNormal>) {
          return {{"kind", "facet_normal"},
                  {"w", v.w},
                  {"positive", rationals(v.witness.positive)},
                  {"negative", rationals(v.witness.negative)}};
        } else {
          Json j = {{"kind", "degenerate_point"},
                    {"orthant", v.orthant},
                    {"radicands", rationals(v.radicands)},
                    {"roots", integers(v.roots)},
                    {"exponent_map", to_json(v.exponent_map)},
                    {"approx", v.approx}};
          if (v.exact) j["exact"] = rationals(*v.exact);
          return j;
        }
      },
      c);
}

Json to_json(const FeasibilityReport& r) {
  Json j = {{"positive", to_string(r.positive)}, {"nonzero", to_string(r.nonzero)}, {"real", to_string(r.real)}};
  j["classification"] = r.classification ? Json(to_string(*r.classification)) : Json(nullptr);
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  if (r.certificate) {
    if (auto p = exact_point(*r.certificate)) j["witness"] = p->size() == 1 ? Json(rational_string(p->front())) : rationals(*p);
  }
  if (r.nonzero_witness) j["nonzero_witness"] = to_json(*r.nonzero_witness);
  if (r.real_witness) j["real_witness"] = to_json(*r.real_witness);
  j["messages"] = r.messages;
  return j;
}

Json to_json(const TopologyReport& t) {
  Json bounds = {{"compact", t.compact_bound}, {"noncompact", t.noncompact_bound}};
  Json j = {{"n", t.n}, {"bounds", std::move(bounds)}, {"interior_disjoint", t.interior_disjoint}};
  j["classification"] = t.classification ? Json(to_string(*t.classification)) : Json(nullptr);
  j["compact_components"] = t.compact_components ? Json(*t.compact_components) : Json(nullptr);
  j["noncompact_components"] = t.noncompact_components ? Json(*t.noncompact_components) : Json(nullptr);
  if (t.positive_roots) j["positive_roots"] = *t.positive_roots;
  if (!t.label.empty()) j["label"] = t.label;
  return j;
}

}  // namespace fewno
