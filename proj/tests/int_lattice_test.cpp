#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "fewno/int_lattice.hpp"
#include "fewno/json_io.hpp"
#include "support/oracles.hpp"

namespace fewno {
namespace {

using testing::Rng;
using testing::uniform;

IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

void expect_hermite_shape(const IntMatrix& h) {
  std::size_t lead = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t j = 0;
    while (j < h.cols() && h(i, j) == 0) ++j;
    if (j == h.cols()) {
      for (std::size_t k = i; k < h.rows(); ++k)
        for (std::size_t c = 0; c < h.cols(); ++c) ASSERT_EQ(h(k, c), 0);
      return;
    }
    ASSERT_TRUE(i == 0 || j >= lead);
    ASSERT_GT(h(i, j), 0);
    for (std::size_t k = 0; k < i; ++k) {
      ASSERT_GE(h(k, j), 0);
      ASSERT_LT(h(k, j), h(i, j));
    }
    for (std::size_t k = i + 1; k < h.rows(); ++k) ASSERT_EQ(h(k, j), 0);
    lead = j + 1;
  }
}

void expect_smith_shape(const IntMatrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j) ASSERT_EQ(s(i, j), 0);
  const std::size_t k = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < k; ++i) {
    ASSERT_GE(s(i, i), 0);
    if (i + 1 < k && s(i, i) != 0) {
      ASSERT_TRUE(mpz_divisible_p(s(i + 1, i + 1).get_mpz_t(), s(i, i).get_mpz_t()));
    }
    if (i + 1 < k && s(i, i) == 0) ASSERT_EQ(s(i + 1, i + 1), 0);
  }
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(IntMatrix::identity(3)), 1);
  EXPECT_EQ(determinant(IntMatrix{{1, 2}, {3, 4}}), -2);
  EXPECT_EQ(determinant(IntMatrix{{2, 0}, {0, 2}}), 4);
  EXPECT_EQ(rank(IntMatrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Hermite, Examples) {
  auto id = hermite_factor(IntMatrix::identity(2));
  EXPECT_EQ(id.U, IntMatrix::identity(2));
  EXPECT_EQ(id.H, IntMatrix::identity(2));

  auto h = hermite_factor(IntMatrix{{1, 2}, {3, 4}});
  EXPECT_EQ(h.U, (IntMatrix{{-2, 1}, {3, -1}}));
  EXPECT_EQ(h.H, (IntMatrix{{1, 0}, {0, 2}}));
  EXPECT_EQ(h.U * (IntMatrix{{1, 2}, {3, 4}}), h.H);

  IntMatrix m{{0, 3}, {2, 0}};
  auto g = hermite_factor(m);
  EXPECT_EQ(g.U * m, g.H);
  EXPECT_TRUE(is_unimodular(g.U));
  expect_hermite_shape(g.H);
  EXPECT_EQ(g.H(0, 0), 2);
  EXPECT_EQ(g.H(1, 1), 3);
}

TEST(Smith, Examples) {
  auto s = smith_factor(IntMatrix{{2, 0}, {0, 4}});
  EXPECT_EQ(s.S, (IntMatrix{{2, 0}, {0, 4}}));
  auto t = smith_factor(IntMatrix{{1, 2}, {3, 4}});
  EXPECT_EQ(t.S, (IntMatrix{{1, 0}, {0, 2}}));
  EXPECT_EQ(t.U * (IntMatrix{{1, 2}, {3, 4}}) * t.V, t.S);
  auto z = smith_factor(IntMatrix(2, 2));
  EXPECT_EQ(z.S, IntMatrix(2, 2));
  EXPECT_EQ(z.U, IntMatrix::identity(2));
  EXPECT_EQ(z.V, IntMatrix::identity(2));
}

TEST(Properties, NormalFormsOnRandomMatrices) {
  Rng rng(21);
  for (int it = 0; it < 150; ++it) {
    auto r = static_cast<std::size_t>(uniform(rng, 1, 6));
    auto c = static_cast<std::size_t>(uniform(rng, 1, 6));
    auto m = random_matrix(rng, r, c, it % 3 == 0 ? 3 : 1000000);
    if (it % 5 == 0 && r > 1) {
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = 2 * m(0, j);  // force deficiency
    }
    auto h = hermite_factor(m);
    ASSERT_TRUE(is_unimodular(h.U));
    ASSERT_EQ(h.U * m, h.H);
    expect_hermite_shape(h.H);
    ASSERT_EQ(h.rank, rank(m));
    // uniqueness: a unimodular row transform of M has the same H
    auto mixed = hermite_factor(testing::random_unimodular(rng, r) * m);
    ASSERT_EQ(mixed.H, h.H);

    auto s = smith_factor(m);
    ASSERT_TRUE(is_unimodular(s.U));
    ASSERT_TRUE(is_unimodular(s.V));
    ASSERT_EQ(s.U * m * s.V, s.S);
    expect_smith_shape(s.S);
    if (r == c) {
      Integer prod = 1;
      for (std::size_t i = 0; i < r; ++i) prod *= s.S(i, i);
      ASSERT_EQ(prod, abs(determinant(m)));
      ASSERT_EQ(Rational(determinant(m)), testing::rational_determinant([&] {
                  std::vector<std::vector<Rational>> rows(r, std::vector<Rational>(c));
                  for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < c; ++j) rows[i][j] = m(i, j);
                  return rows;
                }()));
    }
  }
}

TEST(Kernel, SpansRightKernel) {
  Rng rng(22);
  for (int it = 0; it < 100; ++it) {
    auto r = static_cast<std::size_t>(uniform(rng, 1, 4));
    auto c = static_cast<std::size_t>(uniform(rng, r, 6));
    auto m = random_matrix(rng, r, c, 5);
    auto ker = integer_kernel(m);
    ASSERT_EQ(ker.size(), c - rank(m));
    for (const auto& v : ker) {
      auto z = m * v;
      for (const auto& e : z) ASSERT_EQ(e, 0);
    }
  }
}

TEST(CircuitRelation, Examples) {
  EXPECT_EQ(circuit_relation(PointSet({{0}, {1}, {2}})), (std::vector<Integer>{1, -2, 1}));
  EXPECT_EQ(circuit_relation(PointSet({{0, 0}, {1, 0}, {0, 1}, {1, 1}})), (std::vector<Integer>{1, -1, -1, 1}));
  EXPECT_EQ(circuit_relation(PointSet({{0, 0}, {4, 0}, {0, 4}, {1, 1}})), (std::vector<Integer>{2, 1, 1, -4}));
  // a zero coordinate: (0,0),(1,0),(2,0) and the off-line point (0,1)
  EXPECT_THROW(circuit_relation(PointSet({{0, 0}, {1, 0}, {2, 0}, {0, 1}})), PreconditionError);
}

TEST(CircuitRelation, PermutationEquivarianceAndVolumes) {
  Rng rng(23);
  int tested = 0;
  while (tested < 120) {
    auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
    std::vector<ExponentVector> pts;
    std::set<ExponentVector> seen;
    while (pts.size() < n + 2) {
      ExponentVector p(n);
      for (auto& e : p) e = uniform(rng, -6, 6);
      if (seen.insert(p).second) pts.push_back(p);
    }
    PointSet a(pts);
    if (testing::reference_affine_dim(a) != n) continue;
    std::vector<Integer> m;
    try {
      m = circuit_relation(a);
    } catch (const PreconditionError&) {
      continue;  // some point off the circuit
    }
    ++tested;
    // |m_j| proportional to |det| of the homogenized simplex without a_j
    auto rows = testing::homogenized(a);
    std::vector<Integer> vols;
    for (std::size_t j = 0; j < a.size(); ++j) {
      auto sub = rows;
      sub.erase(sub.begin() + static_cast<long>(j));
      vols.push_back(Integer(abs(testing::rational_determinant(sub).get_num())));
    }
    Integer g = 0;
    for (const auto& v : vols) g = gcd(g, v);
    for (std::size_t j = 0; j < a.size(); ++j) ASSERT_EQ(abs(m[j]) * g, vols[j]);

    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto mp = circuit_relation(a.subset(perm));
    int s = sgn(mp[0]) == sgn(m[perm[0]]) ? 1 : -1;
    for (std::size_t j = 0; j < a.size(); ++j) ASSERT_EQ(mp[j], s * m[perm[j]]);
  }
}

TEST(MonomialSubstitute, Examples) {
  auto f = parse_polynomial("1 + x1*x2 + x1^2*x2^2");
  EXPECT_EQ(monomial_substitute(f, IntMatrix::identity(2)), f);
  IntMatrix u{{1, 0}, {-1, 1}};  // (1,1) -> (1,0)
  EXPECT_EQ(monomial_substitute(f, u), parse_polynomial("1 + x1 + x1^2", 2));
  EXPECT_EQ(monomial_substitute(parse_polynomial("x1", 2), IntMatrix{{0, 1}, {1, 0}}), parse_polynomial("x2"));
  EXPECT_THROW(monomial_substitute(f, IntMatrix{{2, 0}, {0, 1}}), PreconditionError);
}

TEST(MonomialSubstitute, InverseRoundTrip) {
  Rng rng(24);
  for (int it = 0; it < 100; ++it) {
    auto u = testing::random_unimodular(rng, 3);
    std::vector<Term> terms;
    for (int k = 0; k < 4; ++k)
      terms.push_back(Term{{uniform(rng, -4, 4), uniform(rng, -4, 4), uniform(rng, -4, 4)}, Integer(uniform(rng, 1, 9))});
    SparsePolynomial f(3, terms);
    auto g = monomial_substitute(f, u);
    ASSERT_EQ(monomial_substitute(g, unimodular_inverse(u)), f);
  }
}

TEST(Json, MatrixRoundTrip) {
  IntMatrix m{{1, -2}, {3, 4}};
  m(0, 0) = Integer("123456789012345678901234567890");
  auto j = to_json(m);
  EXPECT_EQ(j[0][0], "123456789012345678901234567890");
  EXPECT_EQ(matrix_from_json(j), m);
}

}  // namespace
}  // namespace fewno
