#pragma once

// Property suites shared by the gtest runner and the acceptance binary. Each
// returns how many cases it checked and describes the first failure.

#include <functional>
#include <string>
#include <vector>

#include "clusterqh/grassmann.hpp"
#include "clusterqh/orbits.hpp"
#include "clusterqh/patterns.hpp"
#include "clusterqh/quasihom.hpp"
#include "clusterqh/surfaces.hpp"
#include "generators.hpp"

namespace props {

struct Tally {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      if (failures == 0) first_failure = what;
      ++failures;
    }
  }
  // Runs fn, recording a failure if it returns false or throws.
  void guard(const std::string& what, const std::function<bool()>& fn) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      record(false, what + ": " + e.what());
      return;
    }
    record(ok, what);
  }
  bool ok() const { return failures == 0; }
  std::string summary() const {
    std::string s = std::to_string(checked - failures) + "/" + std::to_string(checked);
    if (failures > 0) s += " (first failure: " + first_failure + ")";
    return s;
  }
};

inline std::string word_text(const cqh::MutationWord& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + "]";
}

// Patterns whose explored graphs feed the per-edge and per-vertex checks.
struct NamedSeed {
  std::string name;
  cqh::Seed seed;
  std::size_t depth;
  std::size_t nodes;
};

inline std::vector<NamedSeed> pattern_fixtures() {
  using namespace cqh;
  const GrassmannFixture fx = build_fixture(GenericMatrixContext(2, 5));
  const AnnulusFixture ann = annulus_fixture();
  return {
      {"gr25", fx.gr_base, 20, 100},
      {"band25", fx.band_base, 20, 100},
      {"a2_principal", Seed::initial(ExtMatrix(2, 2, {{0, 1}, {-1, 0}, {1, 0}, {0, 1}})), 20, 100},
      {"a3", Seed::initial(ExtMatrix(3, 1, {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}, {1, 0, -1}})), 20, 100},
      {"b2", Seed::initial(ExtMatrix(2, 1, {{0, 1}, {-2, 0}, {1, 1}})), 20, 100},
      {"annulus", ann.base, 3, 150},
  };
}

inline Tally mutation_involution(std::uint32_t seed, std::size_t trials) {
  gen::Rng rng(seed);
  Tally t;
  for (std::size_t i = 0; i < trials; ++i) {
    cqh::Seed s0 = gen::seed(rng, 4, 2);
    cqh::MutationWord w = gen::reduced_word(rng, s0.n(), static_cast<std::size_t>(gen::uniform(rng, 0, 4)));
    const auto k = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(s0.n()) - 1));
    t.guard("involution at " + word_text(w) + " k=" + std::to_string(k), [&] {
      cqh::Seed s = cqh::mutate_along(s0, w);
      return cqh::mutate_seed(cqh::mutate_seed(s, k), k) == s;
    });
  }
  return t;
}

// Random words of length up to max_len from random finite or affine seeds of
// rank at most 4; every division must be exact and every exchange relation
// must hold.
inline Tally laurent_totality(std::uint32_t seed, std::size_t words, std::size_t max_len) {
  gen::Rng rng(seed);
  Tally t;
  for (std::size_t i = 0; i < words; ++i) {
    cqh::Seed s0 = gen::tame_seed(rng, 2);
    const auto len = static_cast<std::size_t>(gen::uniform(rng, 1, static_cast<int>(max_len)));
    cqh::MutationWord w = gen::reduced_word(rng, s0.n(), len);
    t.guard("word " + word_text(w), [&] {
      cqh::Seed s = s0;
      for (std::size_t k : w) {
        cqh::Seed next = cqh::mutate_seed(s, k);
        auto [plus, minus] = cqh::exchange_terms(s, k);
        if (s.cluster[k] * next.cluster[k] != plus + minus) return false;
        s = next;
      }
      return true;
    });
  }
  return t;
}

// Same check on unrestricted random seeds, where words stay short because
// wild classes grow too quickly for length 8.
inline Tally laurent_totality_short(std::uint32_t seed, std::size_t words, std::size_t max_len) {
  gen::Rng rng(seed);
  Tally t;
  for (std::size_t i = 0; i < words; ++i) {
    cqh::Seed s0 = gen::seed(rng, 4, 2);
    const auto len = static_cast<std::size_t>(gen::uniform(rng, 1, static_cast<int>(max_len)));
    cqh::MutationWord w = gen::reduced_word(rng, s0.n(), len);
    t.guard("word " + word_text(w), [&] {
      cqh::Seed s = cqh::mutate_along(s0, w);
      for (const auto& x : s.cluster)
        for (std::size_t f = s.n(); f < s.ambient_size(); ++f)
          if (x.min_exponents()[f] < 0) return false;  // frozen variables never appear in denominators
      return true;
    });
  }
  return t;
}

inline Tally hatted_propagation() {
  Tally t;
  for (const auto& f : pattern_fixtures()) {
    cqh::ExplorationGraph g = cqh::explore(f.seed, f.depth, f.nodes);
    for (const auto& e : g.edges) {
      t.guard(f.name + " edge " + std::to_string(e.from) + "->" + std::to_string(e.to),
              [&] { return cqh::hatted_mutation_check(g.nodes[e.from].seed, e.label); });
    }
  }
  return t;
}

// Seeds related by a random rescaling stay related after every mutation, two levels deep.
inline Tally orbit_closure(std::uint32_t seed, std::size_t trials) {
  gen::Rng rng(seed);
  Tally t;
  for (std::size_t i = 0; i < trials; ++i) {
    cqh::Seed s = gen::seed(rng, 3, 2);
    if (s.m() == 0) continue;
    cqh::Rescaling r = cqh::Rescaling::identity(s.n(), s.m());
    for (auto& c : r.c) c = gen::frozen(rng, s.m(), -2, 2);
    for (auto& d : r.d) d = gen::frozen(rng, s.m(), -2, 2);
    cqh::SeedLike a = cqh::as_seed_like(s), b = cqh::apply_rescaling(a, r);
    for (std::size_t k = 0; k < s.n(); ++k) {
      cqh::SeedLike ak = cqh::mutate_seedlike(a, k), bk = cqh::mutate_seedlike(b, k);
      t.guard("trial " + std::to_string(i) + " k=" + std::to_string(k),
              [&] { return cqh::seeds_equivalent(ak, bk).has_value(); });
      for (std::size_t l = 0; l < s.n(); ++l) {
        if (l == k) continue;
        t.guard("trial " + std::to_string(i) + " word " + std::to_string(k) + "," + std::to_string(l), [&] {
          return cqh::seeds_equivalent(cqh::mutate_seedlike(ak, l), cqh::mutate_seedlike(bk, l)).has_value();
        });
      }
    }
  }
  return t;
}

struct VerifiedMap {
  std::string name;
  cqh::MonomialMap map;
  cqh::Seed src;
  cqh::Seed dst;
  std::size_t depth;
};

inline std::vector<VerifiedMap> verified_maps(std::uint32_t seed, std::size_t random_pairs) {
  using namespace cqh;
  const GrassmannFixture fx = build_fixture(GenericMatrixContext(2, 5));
  const AnnulusFixture ann = annulus_fixture();
  std::vector<VerifiedMap> out{
      {"fstar", fx.fstar, fx.gr_base, fx.band_base, 6},
      {"gstar", fx.gstar, fx.band_base, fx.gr_base, 6},
      {"rho2", ann.rho2_map, ann.base, ann.rho2_target, 3},
  };
  gen::Rng rng(seed);
  while (out.size() < 3 + random_pairs) {
    Seed s = gen::seed(rng, 3, 2);
    IntMatrix e = s.btilde.entries();
    const std::size_t extra = static_cast<std::size_t>(gen::uniform(rng, 0, 2));
    for (std::size_t r = 0; r < extra; ++r) {
      IntRow row(s.n(), 0);
      for (std::size_t i = 0; i < s.n() + s.m(); ++i) {
        const long c = gen::uniform(rng, -1, 1);
        for (std::size_t j = 0; j < s.n(); ++j) row[j] += c * e[i][j];
      }
      e.push_back(row);
    }
    Seed dst = Seed::initial(ExtMatrix(s.n(), s.m() + extra, e));
    auto m = construct_qh(s.btilde, dst.btilde);
    if (!m) continue;
    out.push_back({"random" + std::to_string(out.size()), *m, s, dst, 3});
  }
  return out;
}

// Along every word up to the given depth, each image cluster variable is its
// normalization times the target cluster variable, and the image seed lies in
// the orbit of the target seed.
inline Tally separation_identity(const std::vector<VerifiedMap>& maps) {
  Tally t;
  for (const auto& vm : maps) {
    cqh::NormalizationMap c = cqh::normalization_map(vm.map);
    std::vector<cqh::MutationWord> frontier{{}};
    for (std::size_t depth = 0; depth <= vm.depth; ++depth) {
      std::vector<cqh::MutationWord> next;
      for (const auto& w : frontier) {
        cqh::Seed s = cqh::mutate_along(vm.src, w), d = cqh::mutate_along(vm.dst, w);
        for (std::size_t i = 0; i < s.n(); ++i) {
          t.guard(vm.name + " " + word_text(w) + " x" + std::to_string(i), [&] {
            cqh::LaurentPoly lhs = cqh::apply_map(vm.map, s.cluster[i]);
            return lhs == cqh::embed_frozen(c(s.cluster[i]), d.n()) * d.cluster[i];
          });
        }
        t.guard(vm.name + " " + word_text(w) + " orbit", [&] {
          return cqh::seeds_equivalent(cqh::image_seed(vm.map, s), cqh::as_seed_like(d)).has_value();
        });
        if (depth < vm.depth)
          for (std::size_t k = 0; k < s.n(); ++k)
            if (w.empty() || w.back() != k) next.push_back(cqh::tree_step(w, k));
      }
      frontier = std::move(next);
    }
  }
  return t;
}

// Pairs (B, B') where B' keeps the principal part and replaces the coefficient
// rows by a unimodular recombination plus multiples of the principal rows.
inline Tally construct_round_trip(std::uint32_t seed, std::size_t pairs) {
  using namespace cqh;
  gen::Rng rng(seed);
  Tally t;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    const auto m = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    ExtMatrix src = gen::ext_matrix(rng, n, m);
    IntMatrix u = gen::unimodular(rng, m);
    IntMatrix coeff = matmul(u, src.coefficient_rows());
    const IntMatrix principal = src.principal();
    for (auto& row : coeff) {
      for (std::size_t p = 0; p < n; ++p) {
        const long c = gen::uniform(rng, -1, 1);
        for (std::size_t j = 0; j < n; ++j) row[j] += c * principal[p][j];
      }
    }
    IntMatrix e = principal;
    e.insert(e.end(), coeff.begin(), coeff.end());
    ExtMatrix dst(n, m, e);
    t.guard("pair " + std::to_string(i), [&] {
      auto there = construct_qh(src, dst), back = construct_qh(dst, src);
      if (!there || !back) return false;
      Seed s = Seed::initial(src), d = Seed::initial(dst);
      if (!verify_qh(*there, s, d) || !verify_qh(*back, d, s)) return false;
      auto g1 = proportional(compose(*back, *there), MonomialMap::identity(n, m), src);
      auto g2 = proportional(compose(*there, *back), MonomialMap::identity(n, m), dst);
      if (!g1 || !g2) return false;
      // The witnesses really are gradings.
      for (const auto& [g, b] : {std::pair{*g1, src}, std::pair{*g2, dst}}) {
        for (const auto& row : matmul(g.matrix, b.entries()))
          for (long v : row)
            if (v != 0) return false;
      }
      return true;
    });
  }
  return t;
}

}  // namespace props
