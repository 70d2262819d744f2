#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fewno/types.hpp"

namespace fewno {

// alphas[i] = prod_j gammas[j]^exponents[i][j], gammas pairwise coprime and > 1.
struct GcdFreeBasis {
  std::vector<Integer> gammas;
  std::vector<std::vector<Integer>> exponents;
};

GcdFreeBasis gcd_free_basis(std::span<const Integer> alphas);

// Decides prod alphas[i]^us[i] == prod betas[i]^vs[i] without expanding.
// Bases may be negative or zero; 0^0 is rejected with PreconditionError.
bool binomial_vanish(std::span<const Integer> alphas, std::span<const Integer> betas,
                     std::span<const Integer> us, std::span<const Integer> vs);

struct SignOptions {
  // Working-precision ceiling in bits; PrecisionExhausted beyond it.
  std::size_t max_bits = std::size_t{1} << 20;
};

// Sign of prod alphas^us - prod betas^vs for bases >= 1.
int binomial_sign(std::span<const Integer> alphas, std::span<const Integer> betas,
                  std::span<const Integer> us, std::span<const Integer> vs,
                  const SignOptions& options = {});

// Enclosure [value - radius, value + radius] of ln(n); radius <= 2^-bits.
struct LogInterval {
  Rational value;
  Rational radius;
  std::size_t bits = 0;

  Rational lower() const { return value - radius; }
  Rational upper() const { return value + radius; }
  bool contains(const Rational& x) const { return lower() <= x && x <= upper(); }
};

LogInterval log_interval(const Integer& n, std::size_t bits);

// Fixed-point form used internally: ln(n) lies in (mid - rad, mid + rad) * 2^-scale.
struct FixedLog {
  Integer mid;
  Integer rad;
  std::size_t scale = 0;
};
FixedLog log_fixed(const Integer& n, std::size_t bits);

}  // namespace fewno
