#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "toricdef/deform.hpp"
#include "toricdef/io.hpp"

using namespace toricdef;

namespace {

UnimodularMap to_map(const oracle::Mat& m) {
  IntMatrix im(m.size(), m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) im(r, c) = m[r][c];
  return UnimodularMap(im);
}

// Drops one maximal cone: still a fan, never complete.
Fan punctured(const Fan& f, std::size_t cone) {
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < f.max_cones().size(); ++i)
    if (i != cone) cones.push_back(f.max_cones()[i]);
  return make_fan(f.dimension(), f.rays(), cones);
}

std::multiset<Integer> degrees(const Fan& f) {
  std::multiset<Integer> out;
  for (const auto& r : primitive_relations(f)) out.insert(r.degree);
  return out;
}

BundleSpec random_spec(std::mt19937_64& rng, std::size_t d, long long hi) {
  std::uniform_int_distribution<long long> twist(0, hi);
  BundleSpec s;
  for (std::size_t i = 0; i + 1 < d; ++i) s.twists.push_back(twist(rng));
  return s;
}

}  // namespace

TEST(Completeness, AgreesWithSampling) {
  for (const auto& [name, f] : support::corpus()) {
    EXPECT_TRUE(is_complete(f)) << name;
    EXPECT_TRUE(oracle::monte_carlo_complete(f)) << name;
  }
}

TEST(Completeness, PuncturedFansAreIncomplete) {
  for (const auto& [name, f] : support::corpus()) {
    if (f.dimension() < 2 || f.dimension() > 3) continue;
    for (std::size_t i = 0; i < f.max_cones().size(); i += 3) {
      Fan g = punctured(f, i);
      EXPECT_FALSE(is_complete(g)) << name << " minus cone " << i;
      EXPECT_FALSE(oracle::monte_carlo_complete(g)) << name << " minus cone " << i;
    }
  }
}

TEST(PrimitiveCollections, MatchExhaustiveSearch) {
  for (const auto& [name, f] : support::corpus()) {
    auto got = primitive_collections(f);
    std::set<std::vector<std::size_t>> mine(got.begin(), got.end());
    EXPECT_EQ(mine, oracle::brute_primitive_collections(f)) << name;
  }
}

TEST(Classification, CriteriaAgreeOnRandomDivisors) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> coeff(-1, 3);
  for (const auto& [name, f] : support::corpus()) {
    for (int trial = 0; trial < 4; ++trial) {
      TDivisor d{std::vector<Integer>(f.rays().size())};
      for (auto& c : d.coefficients) c = coeff(rng);
      auto status = nef_ample_status(f, d);
      // Nef iff D . C >= 0 on every curve; on a smooth complete fan the
      // primitive relations generate the cone of curves.
      bool nef = true, ample = true;
      for (const auto& rel : primitive_relations(f)) {
        Integer dot = 0;
        for (auto r : rel.collection) dot += d.coefficients[r];
        for (const auto& [r, c] : rel.support) dot -= c * d.coefficients[r];
        if (dot < 0) nef = false;
        if (dot <= 0) ample = false;
      }
      const NefStatus expected = ample ? NefStatus::Ample : nef ? NefStatus::NefNotAmple : NefStatus::NotNef;
      EXPECT_EQ(status, expected) << name;
    }
  }
}

TEST(Isomorphism, InvariantsSurviveRandomCoordinates) {
  std::mt19937_64 rng(7);
  for (const auto& [name, f] : support::corpus()) {
    Fan g = f.transformed(to_map(oracle::random_unimodular(f.dimension(), rng)));
    EXPECT_EQ(classify_fano(f).classification, classify_fano(g).classification) << name;
    EXPECT_EQ(degrees(f), degrees(g)) << name;
    EXPECT_EQ(find_splittings(f).size(), find_splittings(g).size()) << name;
  }
}

TEST(RoundTrip, RelationsRebuildTheFan) {
  for (const auto& [name, f] : support::corpus())
    EXPECT_TRUE(fan_isomorphism(support::from_own_relations(f), f).has_value()) << name;
}

TEST(RoundTrip, SerializeThenParseUnderRandomCoordinates) {
  std::mt19937_64 rng(99);
  for (const auto& [name, f] : support::corpus()) {
    Fan g = f.transformed(to_map(oracle::random_unimodular(f.dimension(), rng, 10)));
    EXPECT_EQ(parse_fan(serialize_fan(g)), g) << name;
  }
}

TEST(Shear, GroupLaw) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> coef(-5, 5);
  for (std::size_t d = 2; d <= 5; ++d)
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Integer> q(d - 1), r(d - 1), sum(d - 1), neg(d - 1);
      for (std::size_t i = 0; i + 1 < d; ++i) {
        q[i] = coef(rng);
        r[i] = coef(rng);
        sum[i] = q[i] + r[i];
        neg[i] = -q[i];
      }
      EXPECT_EQ(shear_map(q) * shear_map(r), shear_map(sum));
      EXPECT_EQ(shear_map(q) * shear_map(neg), UnimodularMap::identity(d));
      LatticeVector flat(d), up(d);
      for (std::size_t i = 0; i + 1 < d; ++i) flat[i] = coef(rng);
      EXPECT_EQ(shear_map(q)(flat), flat);
      up[d - 1] = -1;
      auto moved = shear_map(q)(up);
      EXPECT_EQ(moved[d - 1], -1);
      for (std::size_t i = 0; i + 1 < d; ++i) EXPECT_EQ(moved[i], -q[i]);
    }
}

TEST(Shear, QMinusKeepsTheUpperHalf) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long long> coef(-2, 2);
  for (const auto& [name, f] : support::corpus()) {
    auto splittings = find_splittings(f);
    if (splittings.empty()) continue;
    const auto& s = splittings.front();
    std::vector<Integer> q(f.dimension() - 1);
    for (auto& x : q) x = coef(rng);
    Fan g = q_minus(s, q);
    EXPECT_TRUE(is_complete(g)) << name;
    for (std::size_t r = 0; r < g.rays().size(); ++r)
      if (s.base_fan.generator(r)[f.dimension() - 1] >= 0) EXPECT_EQ(g.generator(r), s.base_fan.generator(r)) << name;
  }
}

TEST(Descent, RandomHighDimensionalBundles) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = 2 + trial % 5;
    BundleSpec s = random_spec(rng, d, 12);
    auto chain = descent(s);
    const Integer dd = static_cast<long long>(d);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      EXPECT_TRUE(chain[i + 1].twists < chain[i].sorted().twists) << to_string(s);
      EXPECT_EQ((chain[i].sum() - chain[i + 1].sum()) % dd, 0) << to_string(s);
    }
    EXPECT_LE(chain.back().max(), 1) << to_string(s);
  }
}

TEST(Chain, RandomPairsFollowCongruence) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t d = 2 + trial % 3;
    BundleSpec x = random_spec(rng, d, 6), y = random_spec(rng, d, 6);
    auto chain = deformation_chain(x, y);
    EXPECT_EQ(chain.has_value(), congruent(x, y)) << to_string(x) << " " << to_string(y);
    if (chain) {
      EXPECT_EQ(chain->specs.front(), x.sorted());
      EXPECT_EQ(chain->specs.back(), y.sorted());
    }
  }
}
