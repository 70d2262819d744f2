#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fewno/discriminant.hpp"
#include "fewno/exact_sign.hpp"
#include "fewno/int_lattice.hpp"
#include "fewno/sparse_polynomial.hpp"

namespace fewno {

enum class Verdict { Empty, Nonempty, Unknown, NotApplicable };

enum class Classification {
  Empty,
  PointMult1,
  SingularPoint,
  CompactSphere,
  AllNoncompact,
  NonemptyUnclassified,
};

std::string_view to_string(Verdict v);
std::string_view to_string(Classification c);

// f(point) == 0 exactly.
struct RationalRoot {
  std::vector<Rational> point;
};

// f(positive) > 0 > f(negative) with both points in one open orthant; the
// segment between them stays in that orthant, so f vanishes on it.
struct SignChange {
  std::vector<Rational> positive;
  std::vector<Rational> negative;
};

// In_w(f) has a positive root for the inner facet normal w; `witness` is a
// sign change of f itself obtained by pushing along w.
struct FacetNormal {
  ExponentVector w;
  SignChange witness;
};

using Certificate = std::variant<RationalRoot, SignChange, FacetNormal, DegeneratePoint>;

// Checks a certificate against f by exact evaluation (DegeneratePoint
// without exact coordinates is checked in floating point, relative to the
// size of the terms).
bool verify_certificate(const SparsePolynomial& f, const Certificate& c);

struct FeasibilityReport {
  Verdict positive = Verdict::Unknown;
  Verdict nonzero = Verdict::Unknown;
  Verdict real = Verdict::Unknown;
  std::optional<Classification> classification;  // of Z_+(f), when determined
  std::optional<Certificate> certificate;         // for Z_+(f)
  std::optional<Certificate> nonzero_witness;
  std::optional<Certificate> real_witness;
  std::vector<std::string> messages;
};

struct FeasOptions {
  SignOptions sign;
  // Search for a sign-change witness when Z_+(f) is a sphere.
  bool sphere_witness = true;
};

// Support affinely independent (#A = dim A + 1).
FeasibilityReport feas_simplex(const SparsePolynomial& f);

// Term order for feas_circuit: order[k] is the index in f.terms() of a_{k+1}.
// a_1 must be the origin, {a_1..a_ell} the circuit and, when the circuit has a
// point in its relative interior, that point is a_ell.
struct CircuitLayout {
  std::vector<std::size_t> order;
  std::size_t ell = 0;
  bool has_interior = false;
};

// #A = n+2 with dim A = n; decides Z_+(f) only.
FeasibilityReport feas_circuit(const SparsePolynomial& f, const CircuitLayout& layout, const FeasOptions& options = {});

struct PreparedCircuit {
  SparsePolynomial f;  // translated so that a_1 = O
  CircuitLayout layout;
  ExponentVector shift;
};
PreparedCircuit prepare_circuit(const SparsePolynomial& f);

struct DimensionReduction {
  SparsePolynomial g;  // d variables, same term count
  IntMatrix U;         // f(y^U) = y^shift * g(y_1..y_d)
  std::size_t d = 0;
};
DimensionReduction reduce_dimension(const SparsePolynomial& f);

// Z_+(f) for any f with #A <= dim A + 2.
FeasibilityReport classify_positive(const SparsePolynomial& f, const FeasOptions& options = {});

// All three sets. Z_R(f) is NotApplicable for Laurent input.
FeasibilityReport feas_real_full(const SparsePolynomial& f, const FeasOptions& options = {});

struct TopologyReport {
  std::size_t n = 0;
  std::size_t compact_bound = 1;
  std::size_t noncompact_bound = 0;
  bool interior_disjoint = false;  // support misses the interior of its hull
  std::optional<Classification> classification;
  std::optional<std::size_t> compact_components;
  std::optional<std::size_t> noncompact_components;
  std::optional<std::size_t> positive_roots;  // n == 1
  std::string label;
};

std::size_t noncompact_bound(std::size_t n);
TopologyReport topology_report(const SparsePolynomial& f, const FeasOptions& options = {});

namespace messages {
inline constexpr std::string_view kSimplexAllNonempty = "Z_+(f), Z*_R(f), and Z_R(f) are all non-empty.";
inline constexpr std::string_view kSimplexOddCoordinate = "Z*_R(f) and Z_R(f) are non-empty, but Z_+(f) is empty.";
inline constexpr std::string_view kSimplexPositiveNonzeroEmpty = "Z_+(f) and Z*_R(f) are empty.";
inline constexpr std::string_view kRealNonempty = "Z_R(f) is non-empty.";
inline constexpr std::string_view kRealEmpty = "Z_R(f) is empty.";
inline constexpr std::string_view kNoncompact = "Z_+(f) is non-empty and all its connected components are non-compact.";
inline constexpr std::string_view kSmoothNoncompact =
    "Z_+(f) is non-empty, smooth, and all its connected components are non-compact.";
inline constexpr std::string_view kPointMult1 = "Z_+(f) is a point of multiplicity 1.";
inline constexpr std::string_view kSingularPoint =
    "Z_+(f) has exactly one connected component, and it is a singular point.";
inline constexpr std::string_view kSphere =
    "Z_+(f) has exactly one connected component, and it is smooth and isotopic to an (n-1)-sphere.";
inline constexpr std::string_view kPositiveEmpty = "Z_+(f) is empty.";
}  // namespace messages

}  // namespace fewno
