#include <gtest/gtest.h>

#include "clusterqh/seeds.hpp"
#include "generators.hpp"

using namespace cqh;

namespace {

// Textbook matrix mutation, written independently of the library.
IntMatrix oracle_mutate(const IntMatrix& b, std::size_t k) {
  IntMatrix out = b;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b[i].size(); ++j) {
      if (i == k || j == k) {
        out[i][j] = -b[i][j];
      } else {
        const long bik = b[i][k], bkj = b[k][j];
        const long sign = bik > 0 ? 1 : (bik < 0 ? -1 : 0);
        out[i][j] = b[i][j] + sign * std::max(bik * bkj, 0L);
      }
    }
  }
  return out;
}

Seed a2_trivial() { return Seed::initial(ExtMatrix(2, 0, {{0, 1}, {-1, 0}})); }

Seed annulus_seed() {
  return Seed::initial(btilde_from_quiver(4, 1, {{0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {4, 2, 2}}),
                       {"xa", "xb", "xc", "xd", "xL"});
}

LaurentPoly x(std::size_t nv, std::size_t i, int p = 1) { return LaurentPoly::var(nv, i, p); }

}  // namespace

TEST(MatrixMutation, A2Example) {
  ExtMatrix b(2, 0, {{0, 1}, {-1, 0}});
  EXPECT_EQ(mutate_matrix(b, 0).entries(), (IntMatrix{{0, -1}, {1, 0}}));
}

TEST(MatrixMutation, AnnulusAtArcAMatchesOracle) {
  Seed s = annulus_seed();
  ExtMatrix mu = mutate_matrix(s.btilde, 0);
  EXPECT_EQ(mu.entries(), oracle_mutate(s.btilde.entries(), 0));
  // Arrows at a reverse; no path through a exists, so nothing else changes.
  EXPECT_EQ(mu.entries()[0], (IntRow{0, 0, -1, -1}));
  EXPECT_EQ(mu.entries()[2], (IntRow{1, -1, 0, 0}));
}

TEST(MatrixMutation, OutOfRangeDirectionThrows) {
  EXPECT_THROW(mutate_matrix(ExtMatrix(2, 0, {{0, 1}, {-1, 0}}), 2), SeedError);
}

TEST(MatrixMutation, RejectsNonSymmetrizable) {
  EXPECT_THROW(ExtMatrix(2, 0, {{0, 1}, {1, 0}}), SeedError);
  EXPECT_THROW(ExtMatrix(2, 0, {{1, 1}, {-1, 0}}), SeedError);
}

TEST(MatrixMutation, RandomMatricesMatchOracleAndKeepSymmetrizer) {
  gen::Rng rng(3301);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    ExtMatrix b = gen::ext_matrix(rng, n, static_cast<std::size_t>(gen::uniform(rng, 0, 3)));
    const auto k = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(n) - 1));
    ExtMatrix mu = mutate_matrix(b, k);
    ASSERT_EQ(mu.entries(), oracle_mutate(b.entries(), k));
    ASSERT_EQ(mutate_matrix(mu, k), b);
    // The same diagonal still symmetrizes the mutated principal part.
    std::vector<long> d = skew_symmetrizer(b.principal());
    IntMatrix p = mu.principal();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(d[i] * p[i][j], -d[j] * p[j][i]);
  }
}

TEST(Symmetrizer, SmallestPositive) {
  EXPECT_EQ(skew_symmetrizer({{0, 2}, {-1, 0}}), (std::vector<long>{1, 2}));
  EXPECT_EQ(skew_symmetrizer({{0, 1}, {-1, 0}}), (std::vector<long>{1, 1}));
}

TEST(CoefficientPair, ZeroRowGivesUnits) {
  Seed s = Seed::initial(ExtMatrix(2, 1, {{0, 1}, {-1, 0}, {0, 0}}));
  CoefficientPair p = coefficient_pair(s, 0);
  EXPECT_TRUE(p.plus.is_unit());
  EXPECT_TRUE(p.minus.is_unit());
}

TEST(CoefficientPair, AnnulusDoubleArrowIntoC) {
  CoefficientPair p = coefficient_pair(annulus_seed(), 2);
  EXPECT_EQ(p.plus.exps, (Exponents{2}));
  EXPECT_TRUE(p.minus.is_unit());
}

TEST(CoefficientPair, PairsAreNormalized) {
  gen::Rng rng(3302);
  for (int trial = 0; trial < 100; ++trial) {
    Seed s = gen::seed(rng, 4, 3);
    for (const auto& p : coefficient_pairs(s)) ASSERT_TRUE(trop_add(p.plus, p.minus).is_unit());
  }
}

TEST(SeedMutation, A2PeriodFive) {
  Seed s = a2_trivial();
  const std::size_t nv = 2;
  const LaurentPoly one = LaurentPoly::one(nv);
  std::vector<LaurentPoly> expected{
      exact_div(x(nv, 1) + one, x(nv, 0)),
      exact_div(x(nv, 0) + x(nv, 1) + one, x(nv, 0) * x(nv, 1)),
      exact_div(x(nv, 0) + one, x(nv, 1)),
      x(nv, 0),
      x(nv, 1),
  };
  for (std::size_t step = 0; step < 5; ++step) {
    const std::size_t k = step % 2;
    s = mutate_seed(s, k);
    EXPECT_EQ(s.cluster[k], expected[step]) << "step " << step;
  }
  // Five alternating steps return to the initial seed with the two positions swapped.
  EXPECT_EQ(s.cluster[0], x(nv, 1));
  EXPECT_EQ(s.cluster[1], x(nv, 0));
  for (std::size_t step = 5; step < 10; ++step) s = mutate_seed(s, step % 2);
  EXPECT_EQ(s, a2_trivial());
}

TEST(SeedMutation, ExchangeRelationHolds) {
  Seed s = annulus_seed();
  for (std::size_t k = 0; k < s.n(); ++k) {
    auto [plus, minus] = exchange_terms(s, k);
    EXPECT_EQ(s.cluster[k] * mutate_seed(s, k).cluster[k], plus + minus);
  }
}

TEST(SeedMutation, CorruptedSeedFailsDivision) {
  // Scaling one cluster variable by a non-monomial breaks the Laurent property downstream.
  Seed s = mutate_seed(a2_trivial(), 0);
  s.cluster[1] = s.cluster[1] * (x(2, 0) + LaurentPoly::one(2));
  EXPECT_THROW(mutate_seed(s, 0), NotDivisible);
}

TEST(Hatted, InitialSeedExponentsAreColumns) {
  Seed s = annulus_seed();
  auto y = hatted(s);
  for (std::size_t j = 0; j < s.n(); ++j) {
    auto mono = monomial_ratio(y[j].num, y[j].den);
    ASSERT_TRUE(mono);
    for (std::size_t i = 0; i < s.ambient_size(); ++i) EXPECT_EQ(mono->exps[i], s.btilde(i, j));
  }
}

TEST(Hatted, MutationInvertsDirectionK) {
  gen::Rng rng(3303);
  for (int trial = 0; trial < 50; ++trial) {
    Seed base = gen::seed(rng, 3, 2);
    Seed s = mutate_along(base, gen::reduced_word(rng, base.n(), 3));
    for (std::size_t k = 0; k < s.n(); ++k) {
      auto before = hatted(s), after = hatted(mutate_seed(s, k));
      ASSERT_TRUE(after[k].equals(before[k].inverse()));
    }
  }
}

TEST(Hatted, MutationCheckPassesOnValidSeeds) {
  Seed s = a2_trivial();
  EXPECT_TRUE(hatted_mutation_check(s, 0));
  EXPECT_TRUE(hatted_mutation_check(s, 1));
  Seed ann = mutate_along(annulus_seed(), {0, 2, 1});
  for (std::size_t k = 0; k < ann.n(); ++k) EXPECT_TRUE(hatted_mutation_check(ann, k));
}

TEST(Hatted, MutationCheckRejectsCorruptedSeed) {
  Seed s = mutate_seed(a2_trivial(), 0);
  s.cluster[1] = s.cluster[1] * (x(2, 0) + LaurentPoly::one(2));
  EXPECT_FALSE(hatted_mutation_check(s, 0));
}

TEST(Opposite, Examples) {
  Seed s = Seed::initial(ExtMatrix(2, 0, {{0, 1}, {-1, 0}}));
  EXPECT_EQ(opposite_seed(s).btilde.entries(), (IntMatrix{{0, -1}, {1, 0}}));
  Seed ann = mutate_along(annulus_seed(), {1, 3});
  EXPECT_EQ(opposite_seed(opposite_seed(ann)), ann);
  auto y = hatted(ann), yo = hatted(opposite_seed(ann));
  for (std::size_t j = 0; j < ann.n(); ++j) {
    Fraction prod = y[j] * yo[j];
    EXPECT_TRUE(prod.equals(Fraction::of(LaurentPoly::one(ann.ambient_size()))));
  }
}

TEST(Indecomposable, Examples) {
  EXPECT_TRUE(is_indecomposable({{0, 1}, {-1, 0}}));
  EXPECT_FALSE(is_indecomposable({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}));
  EXPECT_TRUE(is_indecomposable({{0}}));
}

TEST(SeedJson, RoundTripAfterMutation) {
  Seed s = mutate_along(annulus_seed(), {0, 2, 3});
  nlohmann::json j = to_json(s);
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(j["m"], 1);
  Seed back = seed_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back, s);
  EXPECT_EQ(back.var_names, s.var_names);
}

TEST(SeedJson, QuiverImport) {
  nlohmann::json arrows = nlohmann::json::parse(R"([{"from":0,"to":1,"mult":1},{"from":2,"to":0,"mult":2}])");
  auto a = arrows_from_json(arrows);
  ExtMatrix b = btilde_from_quiver(2, 1, a);
  EXPECT_EQ(b.entries(), (IntMatrix{{0, 1}, {-1, 0}, {2, 0}}));
}
