#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fewno/int_lattice.hpp"
#include "fewno/sparse_polynomial.hpp"

namespace fewno {

struct CircuitData {
  PointSet points;
  std::vector<Integer> relation;  // m, aligned with points
  std::vector<std::size_t> positive_indices;
  std::vector<std::size_t> negative_indices;
};

// Computes the relation of B and validates it; throws PreconditionError if B
// is not a circuit.
CircuitData make_circuit(const PointSet& b);

// Same data with the relation given explicitly (checked).
CircuitData make_circuit(const PointSet& b, std::vector<Integer> relation);

std::size_t affine_dim(const PointSet& a);
bool affinely_independent(const PointSet& a);

struct CircuitInSupport {
  CircuitData circuit;
  std::vector<std::size_t> indices;  // positions of circuit points in A
};

// Unique circuit of A when #A = dim A + 2; nullopt for affinely independent A.
// Throws PreconditionError when #A > dim A + 2.
std::optional<CircuitInSupport> find_circuit(const PointSet& a);

// Index whose relation coordinate carries a sign shared with no other index
// (equivalently the point in the relative interior of Conv B).
std::optional<std::size_t> interior_point(const CircuitData& c);

// sign per point, +1 or -1
using SignDistribution = std::vector<int>;
SignDistribution sign_distribution(const SparsePolynomial& f);

std::optional<std::size_t> caged_alternation(const CircuitData& c, std::span<const int> signs);

// Primitive inner facet normals of Conv(A) for full-dimensional A with
// #A <= n+2, in a deterministic order.
std::vector<ExponentVector> facet_normals(const PointSet& a);

// Indices of points minimizing w.a.
std::vector<std::size_t> face_indices(const PointSet& a, std::span<const Exponent> w);

SparsePolynomial initial_form(const SparsePolynomial& f, std::span<const Exponent> w);

// Rational weight w (scaled to integers) with w.a_i < w.a_j for every j != i,
// or nullopt when a_i is not a vertex of Conv(A).
std::optional<std::vector<Integer>> vertex_weight(const PointSet& a, std::size_t i);

}  // namespace fewno
