#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fewno/sparse_polynomial.hpp"

namespace fewno::oracle {

// Dense univariate polynomial, coefficient i multiplies x^i.
using DensePoly = std::vector<Integer>;

// Univariate dense form; Laurent input is multiplied by x^k to clear
// negative exponents (same roots away from 0). Degree guard 10^5.
DensePoly to_dense(const SparsePolynomial& f);

DensePoly derivative(const DensePoly& p);
DensePoly gcd(const DensePoly& a, const DensePoly& b);  // primitive, positive leading coefficient
DensePoly squarefree_part(const DensePoly& p);

// Sturm chain of the squarefree part of p.
std::vector<DensePoly> sturm_chain(const DensePoly& p);

// Endpoint of an interval; nullopt means infinite in that direction.
using Endpoint = std::optional<Rational>;

// Distinct real roots in (l, r].
std::size_t sturm_count(const DensePoly& p, const Endpoint& l, const Endpoint& r);
std::size_t sturm_count(const SparsePolynomial& f, const Endpoint& l, const Endpoint& r);

// Distinct roots in (0, inf), and how many of them are multiple roots.
struct PositiveRoots {
  std::size_t distinct = 0;
  std::size_t multiple = 0;
};
PositiveRoots positive_roots(const SparsePolynomial& f);

struct GridCertificate {
  bool zero = false;  // p is an exact root; otherwise f(p) f(q) < 0
  std::vector<Rational> p;
  std::vector<Rational> q;
};

// Scans lo + k*step per coordinate inside box; at most 2^26 points.
std::optional<GridCertificate> grid_scan(const SparsePolynomial& f,
                                         std::span<const std::pair<Rational, Rational>> box,
                                         const Rational& step);

// Full expansion of prod alphas^us - prod betas^vs; exponents <= 10^4,
// |bases| <= 10^3, otherwise std::domain_error.
int exact_product_compare(std::span<const Integer> alphas, std::span<const Integer> betas,
                          std::span<const Integer> us, std::span<const Integer> vs);

}  // namespace fewno::oracle
