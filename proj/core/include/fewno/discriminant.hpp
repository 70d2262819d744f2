#pragma once

#include <optional>
#include <vector>

#include "fewno/exact_sign.hpp"
#include "fewno/geometry.hpp"
#include "fewno/int_lattice.hpp"

namespace fewno {

struct CircuitDiscriminant {
  CircuitData circuit;
  std::vector<Integer> coefficients;  // aligned with circuit.points
};

// Validates lengths and nonzero coefficients.
CircuitDiscriminant make_discriminant(CircuitData circuit, std::vector<Integer> coefficients);

// Delta_A = L - R with, for P = {m_i > 0} and N = {m_i < 0},
//   L = prod_P m_i^{m_i} * prod_N c_i^{-m_i},
//   R = prod_N m_i^{-m_i} * prod_P c_i^{m_i}.
// Flipping the sign of m multiplies Delta_A by -(-1)^{sum_P m_i}.
bool adisc_vanish(const CircuitDiscriminant& d);
int adisc_sign(const CircuitDiscriminant& d, const SignOptions& options = {});

// Support-level entry points: a support that is not a circuit with every
// point in the relation (affinely independent or degenerate) has
// discriminant identically 1.
bool support_disc_vanish(const PointSet& a, const std::vector<Integer>& c);
int support_disc_sign(const PointSet& a, const std::vector<Integer>& c, const SignOptions& options = {});

// A point of (R*)^n written as
//   zeta_j = orthant_j * prod_k radicands_k^(exponent_map(k, j) / roots_k)
// with radicands_k > 0. When every radicand is a perfect power, `exact`
// holds the rational coordinates.
struct DegeneratePoint {
  std::vector<int> orthant;
  std::vector<Rational> radicands;
  std::vector<Integer> roots;
  IntMatrix exponent_map;
  std::optional<std::vector<Rational>> exact;
  std::vector<double> approx;
};

// Unique degenerate point of sum c_i x^{b_i} in the given open orthant
// (default: positive). Needs a circuit spanning its ambient space and
// Delta_A(c) = 0; throws std::domain_error when the orthant has none.
DegeneratePoint degenerate_point(const CircuitDiscriminant& d, std::vector<int> orthant = {});

// All degenerate points, one per orthant that carries one.
std::vector<DegeneratePoint> degenerate_points(const CircuitDiscriminant& d);

}  // namespace fewno
