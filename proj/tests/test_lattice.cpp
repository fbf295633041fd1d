#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "toricdef/lattice.hpp"

using namespace toricdef;

namespace {

LatticeVector random_vector(std::mt19937_64& rng, std::size_t d, long long lo, long long hi) {
  std::uniform_int_distribution<long long> dist(lo, hi);
  LatticeVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = dist(rng);
  return v;
}

IntMatrix to_matrix(const oracle::Mat& m) {
  IntMatrix out(m.size(), m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) out(r, c) = m[r][c];
  return out;
}

}  // namespace

TEST(IsPrimitive, Examples) {
  EXPECT_TRUE(is_primitive({1, 0, 0}));
  EXPECT_FALSE(is_primitive({2, 0}));
  EXPECT_TRUE(is_primitive({2, 0, -1}));
  EXPECT_FALSE(is_primitive({0, 0, 0}));
  EXPECT_FALSE(is_primitive(LatticeVector{}));
  EXPECT_TRUE(is_primitive({-1}));
  EXPECT_FALSE(is_primitive({-6, 4, 10}));
}

TEST(IsPrimitive, HugeEntries) {
  Integer big = Integer(1) << 200;
  EXPECT_TRUE(is_primitive(LatticeVector({big, big + 1})));
  EXPECT_FALSE(is_primitive(LatticeVector({big, big * 3})));
}

TEST(ExtendsToBasis, Examples) {
  std::vector<LatticeVector> a{{1, 0, 0}, {0, 1, 0}};
  EXPECT_TRUE(extends_to_basis(a));
  std::vector<LatticeVector> b{{2, 0}, {0, 1}};
  EXPECT_FALSE(extends_to_basis(b));
  std::vector<LatticeVector> c{{-1, 1, 0}, {0, -1, 0}, {0, 0, 1}};
  EXPECT_TRUE(extends_to_basis(c));
  std::vector<LatticeVector> dependent{{1, 2}, {2, 4}};
  EXPECT_FALSE(extends_to_basis(dependent));
  std::vector<LatticeVector> too_many{{1, 0}, {0, 1}, {1, 1}};
  EXPECT_FALSE(extends_to_basis(too_many));
}

TEST(ExtendsToBasis, DimensionMismatch) {
  std::vector<LatticeVector> v{{1, 0}, {0, 1, 0}};
  try {
    extends_to_basis(v, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(ExtendsToBasis, AgreesWithMinorsOracle) {
  std::mt19937_64 rng(7);
  int positives = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t d = 2 + trial % 3;
    std::size_t k = 1 + trial % d;
    std::vector<LatticeVector> vs;
    std::vector<std::vector<long long>> raw;
    for (std::size_t i = 0; i < k; ++i) {
      vs.push_back(random_vector(rng, d, -3, 3));
      raw.push_back(oracle::to_ll(vs.back()));
    }
    bool expected = oracle::minors_extend(raw, d);
    positives += expected;
    EXPECT_EQ(extends_to_basis(vs, d), expected) << "trial " << trial;
  }
  EXPECT_GT(positives, 50);
}

TEST(ExtendsToBasis, InvariantUnderUnimodularMaps) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 3;
    UnimodularMap g(to_matrix(oracle::random_unimodular(d, rng)));
    std::vector<LatticeVector> vs{random_vector(rng, d, -4, 4), random_vector(rng, d, -4, 4)};
    std::vector<LatticeVector> image;
    for (const auto& v : vs) image.push_back(g(v));
    EXPECT_EQ(extends_to_basis(vs), extends_to_basis(image));
  }
}

TEST(Determinant, AgreesWithCofactorOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> dist(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 5;
    oracle::Mat m(n, std::vector<long long>(n));
    for (auto& row : m)
      for (auto& x : row) x = dist(rng);
    EXPECT_EQ(determinant(to_matrix(m)), Integer(oracle::cofactor_det(m)));
  }
}

TEST(Diagonalize, TransformIsUnimodularAndDiagonalizes) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> dist(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a(2 + trial % 2, 4);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = dist(rng);
    auto diag = diagonalize(a);
    Integer det = determinant(diag.column_transform);
    EXPECT_TRUE(det == 1 || det == -1);
    // Product of invariant factors equals the gcd of maximal minors when of full rank.
    IntMatrix av = a * diag.column_transform;
    for (std::size_t c = a.rows(); c < a.cols(); ++c)
      for (std::size_t r = 0; r < a.rows(); ++r)
        if (diag.diagonal.back() != 0) EXPECT_EQ(av(r, c), 0);
  }
}

TEST(Diagonalize, TieBreakIsDeterministic) {
  IntMatrix a(2, 3);
  a(0, 0) = 2; a(0, 1) = 1; a(0, 2) = 1;
  a(1, 0) = 1; a(1, 1) = 3; a(1, 2) = 5;
  auto x = diagonalize(a);
  auto y = diagonalize(a);
  EXPECT_EQ(x.column_transform, y.column_transform);
  EXPECT_EQ(x.diagonal, (std::vector<Integer>{1, 1}));
}

TEST(InverseUnimodular, RoundTrip) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m = to_matrix(oracle::random_unimodular(4, rng, 10));
    EXPECT_EQ(m * inverse_unimodular(m), IntMatrix::identity(4));
  }
  IntMatrix two = IntMatrix::identity(2);
  two(0, 0) = 2;
  EXPECT_THROW(inverse_unimodular(two), Error);
}

TEST(UnimodularMap, RejectsNonUnimodular) {
  IntMatrix m = IntMatrix::identity(3);
  m(1, 1) = 2;
  try {
    UnimodularMap bad(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUnimodular);
  }
}

TEST(ShearMap, Examples) {
  EXPECT_EQ(shear_map({0, 0}), UnimodularMap::identity(3));
  EXPECT_EQ(shear_map({2, -1})(LatticeVector{2, 0, -1}), (LatticeVector{0, 1, -1}));
  for (long long a = 0; a <= 6; ++a)
    for (long long k = 0; k <= 3; ++k)
      EXPECT_EQ(shear_map({2 * k})(LatticeVector{a, -1}), (LatticeVector{a - 2 * k, -1}));
  EXPECT_EQ(determinant(shear_map({5, -7, 3}).matrix()), 1);
}

TEST(ShearMap, CompositionAndHyperplane) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long long> dist(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d = 2 + trial % 3;
    std::vector<Integer> q(d - 1), r(d - 1), sum(d - 1), neg(d - 1);
    for (std::size_t i = 0; i + 1 < d; ++i) {
      q[i] = dist(rng);
      r[i] = dist(rng);
      sum[i] = q[i] + r[i];
      neg[i] = -q[i];
    }
    EXPECT_EQ(shear_map(q) * shear_map(r), shear_map(sum));
    EXPECT_EQ(shear_map(q) * shear_map(neg), UnimodularMap::identity(d));
    LatticeVector v = random_vector(rng, d, -5, 5);
    v[d - 1] = 0;
    EXPECT_EQ(shear_map(q)(v), v);
  }
}

TEST(SolveRational, UniqueAndInconsistent) {
  // x + y = 3, x - y = 1
  std::vector<std::vector<Rational>> a{{1, 1}, {1, -1}};
  std::vector<std::vector<Rational>> b{{3}, {1}};
  auto sol = solve_rational(a, b);
  ASSERT_TRUE(sol.consistent);
  EXPECT_EQ(sol.rank, 2u);
  EXPECT_EQ(sol.x[0][0], 2);
  EXPECT_EQ(sol.x[1][0], 1);
  std::vector<std::vector<Rational>> c{{1, 1}, {1, 1}};
  std::vector<std::vector<Rational>> e{{1}, {2}};
  EXPECT_FALSE(solve_rational(c, e).consistent);
}
