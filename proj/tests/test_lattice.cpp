#include <gtest/gtest.h>

#include "clusterqh/lattice.hpp"
#include "generators.hpp"

using namespace cqh;

TEST(Hermite, SmallExample) {
  BigMatrix a = to_big({{2, 4}, {1, 3}});
  HermiteForm hf = hermite_normal_form(a, 2);
  EXPECT_EQ(hf.rank, 2u);
  EXPECT_EQ(to_small(hf.h), (IntMatrix{{1, 1}, {0, 2}}));
}

TEST(Hermite, TransformReproducesForm) {
  gen::Rng rng(2201);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = static_cast<std::size_t>(gen::uniform(rng, 1, 5));
    const auto cols = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    IntMatrix a = zero_matrix(rows, cols);
    for (auto& r : a)
      for (auto& v : r) v = gen::uniform(rng, -4, 4);
    HermiteForm hf = hermite_normal_form(to_big(a), cols);
    IntMatrix h = to_small(hf.h), u = to_small(hf.u);
    ASSERT_EQ(matmul(u, a), h);
    // Pivots positive, entries above pivots reduced.
    for (std::size_t i = 0; i < hf.rank; ++i) {
      const std::size_t pc = hf.pivot_cols[i];
      ASSERT_GT(h[i][pc], 0);
      for (std::size_t above = 0; above < i; ++above) {
        ASSERT_GE(h[above][pc], 0);
        ASSERT_LT(h[above][pc], h[i][pc]);
      }
    }
    for (std::size_t i = hf.rank; i < rows; ++i)
      for (long v : h[i]) ASSERT_EQ(v, 0);
  }
}

TEST(Lattice, RankAndKernel) {
  IntMatrix a{{1, 2}, {2, 4}, {0, 1}};
  EXPECT_EQ(integer_rank(a), 2u);
  IntMatrix k = left_kernel(a);
  ASSERT_EQ(k.size(), 1u);
  IntMatrix prod = matmul(k, a);
  for (long v : prod[0]) EXPECT_EQ(v, 0);
}

TEST(Lattice, IntegerVersusRationalSpan) {
  IntMatrix a{{2, 0}, {0, 2}};
  EXPECT_FALSE(solve_row_combination(a, {1, 0}).has_value());
  EXPECT_TRUE(in_rational_row_span(a, {1, 0}));
  auto x = solve_row_combination(a, {4, -2});
  ASSERT_TRUE(x);
  EXPECT_EQ(matmul({*x}, a)[0], (IntRow{4, -2}));
}

TEST(Lattice, SameRowLattice) {
  EXPECT_TRUE(same_row_lattice({{1, 1}, {0, 1}}, {{1, 0}, {0, 1}}, 2));
  EXPECT_FALSE(same_row_lattice({{2, 0}, {0, 1}}, {{1, 0}, {0, 1}}, 2));
  EXPECT_TRUE(same_row_lattice({}, {{0, 0}}, 2));
}

TEST(Lattice, UnimodularImagesSpanTheSameLattice) {
  gen::Rng rng(2202);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rows = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    IntMatrix a = zero_matrix(rows, 3);
    for (auto& r : a)
      for (auto& v : r) v = gen::uniform(rng, -3, 3);
    IntMatrix u = gen::unimodular(rng, rows);
    ASSERT_TRUE(same_row_lattice(a, matmul(u, a), 3));
  }
}

TEST(Lattice, OverflowIsReported) {
  BigMatrix big{{mpz_class("1000000000000000000000000")}};
  EXPECT_THROW(to_small(big), std::overflow_error);
}
