#pragma once

#include <nlohmann/json.hpp>

#include "fewno/feasibility.hpp"
#include "fewno/int_lattice.hpp"
#include "fewno/reductions.hpp"
#include "fewno/sparse_polynomial.hpp"

namespace fewno {

using Json = nlohmann::json;

// {"n": int, "terms": [{"c": "<decimal>", "a": [int, ...]}]}
Json to_json(const SparsePolynomial& f);
// Throws ParseError on malformed documents.
SparsePolynomial polynomial_from_json(const Json& j);

Json to_json(const PolySystem& system);
PolySystem system_from_json(const Json& j);

// Row-major arrays of decimal strings.
Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

std::string rational_string(const Rational& q);
Json to_json(const Certificate& c);
Json to_json(const FeasibilityReport& r);
Json to_json(const TopologyReport& t);

}  // namespace fewno
