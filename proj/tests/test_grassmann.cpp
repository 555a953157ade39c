#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "clusterqh/grassmann.hpp"
#include "clusterqh/patterns.hpp"
#include "generators.hpp"

using namespace cqh;

namespace {

// Leibniz expansion, independent of the library's determinant routine.
LaurentPoly leibniz(const std::vector<std::vector<LaurentPoly>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPoly total(nvars);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    LaurentPoly term = LaurentPoly::constant(nvars, inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

LaurentPoly xvar(const GenericMatrixContext& ctx, int r, int c) {
  return LaurentPoly::var(ctx.num_x(), ctx.x_index(r, c));
}

LaurentPoly yvar(const GenericMatrixContext& ctx, int i, int j) {
  return LaurentPoly::var(ctx.num_y(), ctx.y_index(i, j));
}

// Maximal minor of the generic matrix on sorted, distinct columns.
LaurentPoly oracle_plucker(const GenericMatrixContext& ctx, const std::vector<int>& cols) {
  std::vector<std::vector<LaurentPoly>> m;
  for (int r = 1; r <= ctx.rows(); ++r) {
    std::vector<LaurentPoly> row;
    for (int c : cols) row.push_back(xvar(ctx, r, c));
    m.push_back(row);
  }
  return leibniz(m, ctx.num_x());
}

LaurentPoly oracle_band_minor(const GenericMatrixContext& ctx, const std::vector<int>& rows,
                              const std::vector<int>& cols) {
  std::vector<std::vector<LaurentPoly>> m;
  for (int r : rows) {
    std::vector<LaurentPoly> row;
    for (int c : cols) row.push_back(ctx.in_band(r, c) ? yvar(ctx, r, c) : LaurentPoly::zero(ctx.num_y()));
    m.push_back(row);
  }
  return leibniz(m, ctx.num_y());
}

std::vector<std::vector<int>> subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

std::vector<int> interval(int a, int b) {
  std::vector<int> out;
  for (int v = a; v <= b; ++v) out.push_back(v);
  return out;
}

FrozenMonomial band_frozen(const GenericMatrixContext& ctx, std::initializer_list<BandMinorLabel> labels) {
  auto frozen = band_frozen_labels(ctx);
  FrozenMonomial q = FrozenMonomial::unit(frozen.size());
  for (const auto& l : labels) q.exps[std::find(frozen.begin(), frozen.end(), l) - frozen.begin()] += 1;
  return q;
}

const GrassmannFixture& gr25() {
  static const GrassmannFixture fx = build_fixture(GenericMatrixContext(2, 5));
  return fx;
}

}  // namespace

TEST(PluckerIndexing, ReductionAndSign) {
  GenericMatrixContext ctx(2, 5);
  PluckerIndex a = reduce_plucker(ctx, {3, 1, 2});
  EXPECT_EQ(a.cols, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(a.sign, 1);  // a 3-cycle is even
  PluckerIndex b = reduce_plucker(ctx, {2, 1, 5});
  EXPECT_EQ(b.sign, -1);
  PluckerIndex c = reduce_plucker(ctx, {6, 7, 3});  // residues 1, 2, 3
  EXPECT_EQ(c.cols, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(c.sign, 1);
  EXPECT_EQ(reduce_plucker(ctx, {1, 6, 2}).sign, 0);
  EXPECT_TRUE(is_frozen_plucker(ctx, {1, 4, 5}));
  EXPECT_FALSE(is_frozen_plucker(ctx, {1, 3, 5}));
}

TEST(Plucker, MatchesLeibnizOracle) {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {2, 6}, {3, 6}}) {
    GenericMatrixContext ctx(k, n);
    for (const auto& s : subsets(n, n - k)) ASSERT_EQ(plucker(ctx, s), oracle_plucker(ctx, s));
  }
}

TEST(Plucker, Examples) {
  GenericMatrixContext ctx(2, 5);
  EXPECT_EQ(plucker(ctx, {1, 2, 3}).num_terms(), 6u);
  EXPECT_TRUE(plucker(ctx, {1, 1, 3}).is_zero());
  EXPECT_TRUE(plucker(ctx, {1, 6, 3}).is_zero());
  EXPECT_EQ(plucker(ctx, {2, 1, 3}), -plucker(ctx, {1, 2, 3}));
  auto D = [&](std::vector<int> s) { return plucker(ctx, s); };
  EXPECT_EQ(D({2, 4, 5}) * D({1, 3, 5}), D({1, 4, 5}) * D({2, 3, 5}) + D({1, 2, 5}) * D({3, 4, 5}));
}

TEST(BandMinor, Examples) {
  GenericMatrixContext ctx(2, 5);
  EXPECT_EQ(band_minor(ctx, {1, 2}, {2, 3}), yvar(ctx, 1, 2) * yvar(ctx, 2, 3) - yvar(ctx, 1, 3) * yvar(ctx, 2, 2));
  EXPECT_EQ(band_minor(ctx, {1, 2}, {1, 3}), band_minor(ctx, {1}, {1}) * band_minor(ctx, {2}, {3}));
  EXPECT_EQ(band_minor(ctx, {2}, {2}), yvar(ctx, 2, 2));
  EXPECT_THROW(band_minor(ctx, {1, 2}, {2}), GrassmannError);
  EXPECT_THROW(g_star(ctx, 1, 5), GrassmannError);
}

TEST(BandMinor, MatchesLeibnizOracle) {
  GenericMatrixContext ctx(2, 6);
  for (int s = 1; s <= ctx.rows(); ++s)
    for (int a = 1; a + s - 1 <= ctx.rows(); ++a)
      for (const auto& cols : subsets(ctx.n(), s))
        ASSERT_EQ(band_minor(ctx, interval(a, a + s - 1), cols), oracle_band_minor(ctx, interval(a, a + s - 1), cols));
}

TEST(FStar, Examples) {
  GenericMatrixContext ctx(2, 5);
  auto Y = [&](std::vector<int> r, std::vector<int> c) { return band_minor(ctx, r, c); };
  EXPECT_EQ(f_star(ctx, {2, 3, 5}), Y({3}, {5}) * Y({1, 2}, {2, 3}));
  EXPECT_EQ(f_star(ctx, {1, 2, 3}), yvar(ctx, 1, 1) * yvar(ctx, 2, 2) * yvar(ctx, 3, 3));
  EXPECT_EQ(f_star(ctx, {2, 4, 5}), Y({2}, {4}) * Y({3}, {5}) * Y({1}, {2}));
}

TEST(FStar, AgreesWithPluckerOfTheBandMatrix) {
  // Substituting the band matrix into the generic one gives the same determinant.
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {3, 6}}) {
    GenericMatrixContext ctx(k, n);
    std::vector<LaurentPoly> images;
    for (int r = 1; r <= ctx.rows(); ++r)
      for (int c = 1; c <= n; ++c) images.push_back(ctx.in_band(r, c) ? yvar(ctx, r, c) : LaurentPoly::zero(ctx.num_y()));
    for (const auto& s : subsets(n, n - k)) ASSERT_EQ(f_star(ctx, s), substitute(plucker(ctx, s), images));
  }
}

TEST(FactorFStar, Examples) {
  GenericMatrixContext ctx(2, 5);
  FStarFactor f235 = factor_fstar(ctx, {2, 3, 5});
  EXPECT_EQ(f235.minor, (BandMinorLabel{{1, 2}, {2, 3}}));
  EXPECT_EQ(f235.c, band_frozen(ctx, {{{3}, {5}}}));
  FStarFactor f134 = factor_fstar(ctx, {1, 3, 4});
  EXPECT_EQ(f134.minor, (BandMinorLabel{{2, 3}, {3, 4}}));
  EXPECT_EQ(f134.c, band_frozen(ctx, {{{1}, {1}}}));
  FStarFactor f135 = factor_fstar(ctx, {1, 3, 5});
  EXPECT_EQ(f135.minor, (BandMinorLabel{{2}, {3}}));
  EXPECT_EQ(f135.c, band_frozen(ctx, {{{1}, {1}}, {{3}, {5}}}));
  EXPECT_THROW(factor_fstar(ctx, {1, 2, 3}), NoFactorization);
}

TEST(FactorFStar, FactorizationIsExact) {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {2, 6}, {3, 6}}) {
    GenericMatrixContext ctx(k, n);
    auto frozen = band_frozen_labels(ctx);
    for (const auto& s : subsets(n, n - k)) {
      if (is_frozen_plucker(ctx, s)) continue;
      FStarFactor f = factor_fstar(ctx, s);
      LaurentPoly rebuilt = band_minor(ctx, f.minor.rows, f.minor.cols);
      for (std::size_t i = 0; i < frozen.size(); ++i)
        rebuilt *= band_minor(ctx, frozen[i].rows, frozen[i].cols).pow(f.c.exps[i]);
      ASSERT_EQ(rebuilt, f_star(ctx, s));
    }
  }
}

TEST(FactorFStar, BijectionWithIrreducibleMinors) {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {2, 6}, {3, 6}}) {
    GenericMatrixContext ctx(k, n);
    std::set<BandMinorLabel> images;
    std::size_t nonfrozen = 0;
    for (const auto& s : subsets(n, n - k)) {
      if (is_frozen_plucker(ctx, s)) continue;
      ++nonfrozen;
      images.insert(factor_fstar(ctx, s).minor);
    }
    auto irreducible = nonfrozen_irreducible_minors(ctx);
    EXPECT_EQ(images.size(), nonfrozen) << k << "," << n;
    EXPECT_EQ(images, std::set<BandMinorLabel>(irreducible.begin(), irreducible.end())) << k << "," << n;
  }
}

TEST(Irreducibility, Examples) {
  GenericMatrixContext ctx(2, 5);
  EXPECT_TRUE(is_irreducible_band_minor(ctx, {{1, 2}, {2, 3}}));
  EXPECT_FALSE(is_irreducible_band_minor(ctx, {{1, 2}, {1, 3}}));
  EXPECT_EQ(nonfrozen_irreducible_minors(ctx).size(), 5u);
  auto frozen = band_frozen_labels(ctx);
  std::vector<std::string> names;
  for (const auto& l : frozen) names.push_back(l.name());
  EXPECT_EQ(names, (std::vector<std::string>{"Y1,1", "Y2,2", "Y3,3", "Y1,3", "Y2,4", "Y3,5", "Y123,234"}));
}

TEST(GStar, Examples) {
  GenericMatrixContext ctx(2, 5);
  auto D = [&](std::vector<int> s) { return plucker(ctx, s); };
  EXPECT_EQ(g_star(ctx, 1, 2), D({2, 4, 5}));
  EXPECT_EQ(g_star_minor(ctx, {1, 2, 3}, {2, 3, 4}), D({1, 2, 5}) * D({1, 4, 5}) * D({2, 3, 4}));
}

TEST(GStar, RoundTripOnEveryPlucker) {
  GenericMatrixContext ctx(2, 5);
  auto D = [&](std::vector<int> s) { return plucker(ctx, s); };
  for (const auto& s : subsets(5, 3)) ASSERT_EQ(g_star_minor(ctx, {1, 2, 3}, s), D({1, 4, 5}) * D({1, 2, 5}) * D(s));
}

TEST(FlatToBand, BaseCaseAndFullMinors) {
  GenericMatrixContext ctx(2, 5);
  for (int a = 1; a <= 3; ++a)
    for (int j = a; j <= a + 2; ++j) EXPECT_TRUE(flattoband_check(ctx, a, 1, {j}));
  EXPECT_TRUE(flattoband_check(ctx, 1, 3, {1, 3, 5}));
  EXPECT_THROW(flattoband_check(ctx, 2, 3, {2, 3, 4}), GrassmannError);
}

TEST(FlatToBand, RandomInstancesAgainstOracle) {
  // Both sides evaluated with the Leibniz oracle over g_star entries.
  GenericMatrixContext ctx(2, 6);
  gen::Rng rng(7701);
  for (int trial = 0; trial < 10; ++trial) {
    const int a = gen::uniform(rng, 1, ctx.rows() - 1);
    std::vector<int> window = interval(a, a + 1 + ctx.k());
    std::shuffle(window.begin(), window.end(), rng);
    std::vector<int> j(window.begin(), window.begin() + 2);
    std::sort(j.begin(), j.end());
    std::vector<std::vector<LaurentPoly>> m;
    for (int r : {a, a + 1}) {
      std::vector<LaurentPoly> row;
      for (int c : j) row.push_back(ctx.in_band(r, c) ? g_star(ctx, r, c) : LaurentPoly::zero(ctx.num_x()));
      m.push_back(row);
    }
    LaurentPoly lhs = leibniz(m, ctx.num_x());
    std::vector<int> tail = interval(a + ctx.k() + 2, ctx.n() + a - 1);
    tail.insert(tail.end(), j.begin(), j.end());
    LaurentPoly rhs = plucker(ctx, interval(a + ctx.k() + 1, ctx.n() + a)) * plucker(ctx, tail);
    ASSERT_EQ(lhs, rhs);
    ASSERT_TRUE(flattoband_check(ctx, a, 2, j));
  }
}

TEST(FlatToBand, Exhaustive25) {
  GenericMatrixContext ctx(2, 5);
  auto inst = flattoband_instances(ctx);
  EXPECT_FALSE(inst.empty());
  for (const auto& in : inst) ASSERT_TRUE(flattoband_check(ctx, in.a, in.s, in.j));
}

TEST(TropicalC, SingleInstance) {
  GenericMatrixContext ctx(2, 5);
  EXPECT_TRUE(tropical_c_check(ctx, {5}, 1, 2, 3, 4));
}

TEST(TropicalC, ExhaustiveAgainstDirectMin) {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {3, 6}}) {
    GenericMatrixContext ctx(k, n);
    auto inst = short_plucker_instances(ctx);
    EXPECT_FALSE(inst.empty());
    for (const auto& in : inst) {
      ASSERT_TRUE(tropical_c_check(ctx, in.s, in.i, in.j, in.k, in.l));
      auto with = [&](int p, int q) {
        std::vector<int> s = in.s;
        s.push_back(p);
        s.push_back(q);
        return s;
      };
      auto c = [&](int p, int q) -> std::optional<FrozenMonomial> {
        if (reduce_plucker(ctx, with(p, q)).sign == 0) return std::nullopt;
        return c_value(ctx, with(p, q));
      };
      auto times = [](std::optional<FrozenMonomial> a, std::optional<FrozenMonomial> b) -> std::optional<FrozenMonomial> {
        if (!a || !b) return std::nullopt;
        return *a * *b;
      };
      auto lhs = times(c(in.i, in.k), c(in.j, in.l));
      auto t1 = times(c(in.i, in.j), c(in.k, in.l)), t2 = times(c(in.j, in.k), c(in.i, in.l));
      std::optional<FrozenMonomial> rhs = t1 && t2 ? trop_add(*t1, *t2) : (t1 ? t1 : t2);
      ASSERT_EQ(lhs, rhs);
    }
  }
}

TEST(Fixture, Pinned25) {
  const auto& fx = gr25();
  std::vector<std::string> expected_frozen{"D123", "D234", "D345", "D145", "D125"};
  EXPECT_EQ(std::vector<std::string>(fx.gr_base.var_names.begin() + 2, fx.gr_base.var_names.end()), expected_frozen);
  EXPECT_EQ(fx.band_base.var_names.back(), "Y123,234");
  EXPECT_TRUE(verify_qh(fx.fstar, fx.gr_base, fx.band_base));
  EXPECT_TRUE(quasi_inverse_check(fx.fstar, fx.gstar, fx.gr_base));
  for (std::size_t v = 0; v < fx.gr_realization.size(); ++v)
    EXPECT_EQ(fx.gr_realization[v], plucker(fx.ctx, fx.gr_labels[v]));
  ExplorationGraph g = explore(fx.gr_base, 20, 100);
  EXPECT_EQ(g.nodes.size(), 5u);
}

TEST(Fixture, Relations25) {
  const auto& fx = gr25();
  auto gr = gr_relation_checks(fx, 20), band = band_relation_checks(fx, 20);
  EXPECT_EQ(gr.size(), 5u);
  EXPECT_EQ(band.size(), 5u);
  for (const auto& r : gr) EXPECT_TRUE(r.holds) << r.text;
  for (const auto& r : band) EXPECT_TRUE(r.holds) << r.text;
  bool found = false;
  for (const auto& r : gr) found = found || r.text == "D245*D135 = D235*D145 + D345*D125";
  EXPECT_TRUE(found);
}

TEST(Fixture, GeneralShapes) {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 6}, {3, 6}}) {
    GrassmannFixture fx = build_fixture(GenericMatrixContext(k, n));
    EXPECT_TRUE(verify_qh(fx.fstar, fx.gr_base, fx.band_base)) << k << "," << n;
    EXPECT_TRUE(quasi_inverse_check(fx.fstar, fx.gstar, fx.gr_base)) << k << "," << n;
    for (const auto& r : gr_relation_checks(fx, 1)) EXPECT_TRUE(r.holds) << r.text;
    for (const auto& r : band_relation_checks(fx, 1)) EXPECT_TRUE(r.holds) << r.text;
  }
}

TEST(Fixture, SignsOfDeterminantImages) {
  // The monomial maps record exponents only; the determinant images carry the signs.
  GrassmannFixture fx = build_fixture(GenericMatrixContext(2, 6));
  for (std::size_t v = 0; v < fx.band_labels.size(); ++v) {
    const auto& l = fx.band_labels[v];
    LaurentPoly image = g_star_minor(fx.ctx, l.rows, l.cols);
    LaurentPoly mono = LaurentPoly::one(fx.ctx.num_x());
    for (std::size_t r = 0; r < fx.gr_realization.size(); ++r)
      mono *= fx.gr_realization[r].pow(static_cast<int>(fx.gstar.matrix[r][v]));
    EXPECT_EQ(image, LaurentPoly::constant(fx.ctx.num_x(), fx.gstar_signs[v]) * mono) << l.name();
  }
  EXPECT_NE(std::find(fx.gstar_signs.begin(), fx.gstar_signs.end(), -1), fx.gstar_signs.end());
}

TEST(Fixture, UnsupportedShapes) {
  EXPECT_THROW(build_fixture(GenericMatrixContext(1, 4)), UnsupportedFixture);
  EXPECT_THROW(build_fixture(GenericMatrixContext(2, 7)), UnsupportedFixture);
  EXPECT_THROW(GenericMatrixContext(5, 4), GrassmannError);
}

TEST(Fixture, FactorOver) {
  GenericMatrixContext ctx(2, 5);
  std::vector<LaurentPoly> gens{plucker(ctx, {1, 2, 3}), plucker(ctx, {2, 4, 5})};
  auto e = factor_over(gens[0].pow(2) * gens[1], gens);
  ASSERT_TRUE(e);
  EXPECT_EQ(*e, (Exponents{2, 1}));
  EXPECT_FALSE(factor_over(gens[0] + gens[1], gens).has_value());
  EXPECT_FALSE(factor_over(-gens[0], gens).has_value());
  auto s = factor_over_signed(-gens[0], gens);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->sign, -1);
}
