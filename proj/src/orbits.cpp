#include "clusterqh/orbits.hpp"

#include <algorithm>

namespace cqh {

SeedLike as_seed_like(const Seed& seed) {
  return SeedLike{seed.btilde.principal(), coefficient_pairs(seed), seed.cluster, seed.n()};
}

std::vector<Fraction> hatted(const SeedLike& s) { return hatted_from(s.b, s.coeffs, s.cluster); }

SeedLike mutate_seedlike(const SeedLike& s, std::size_t k) {
  if (k >= s.n()) throw SeedError("mutation direction out of range");
  const std::size_t n = s.n();
  LaurentPoly plus = embed_frozen(s.coeffs[k].plus, s.num_mutable);
  LaurentPoly minus = embed_frozen(s.coeffs[k].minus, s.num_mutable);
  for (std::size_t j = 0; j < n; ++j) {
    long b = s.b[j][k];
    if (b > 0) plus *= s.cluster[j].pow(static_cast<int>(b));
    if (b < 0) minus *= s.cluster[j].pow(static_cast<int>(-b));
  }
  SeedLike out = s;
  out.cluster[k] = exact_div(plus + minus, s.cluster[k]);
  out.coeffs[k] = {s.coeffs[k].minus, s.coeffs[k].plus};
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) continue;
    long bkj = s.b[k][j];
    if (bkj > 0) out.coeffs[j].plus = out.coeffs[j].plus * s.coeffs[k].plus.pow(static_cast<int>(bkj));
    if (bkj < 0) out.coeffs[j].minus = out.coeffs[j].minus * s.coeffs[k].minus.pow(static_cast<int>(-bkj));
  }
  out.b = mutate_matrix(ExtMatrix(n, 0, s.b), k).entries();
  return out;
}

Rescaling Rescaling::identity(std::size_t n, std::size_t m) {
  return Rescaling{std::vector<FrozenMonomial>(n, FrozenMonomial::unit(m)),
                   std::vector<FrozenMonomial>(n, FrozenMonomial::unit(m))};
}

SeedLike apply_rescaling(const SeedLike& s, const Rescaling& r) {
  const std::size_t n = s.n();
  if (r.c.size() != n || r.d.size() != n) throw SeedError("rescaling length differs from rank");
  SeedLike out = s;
  for (std::size_t j = 0; j < n; ++j) {
    out.cluster[j] = s.cluster[j] * embed_frozen(r.c[j].inverse(), s.num_mutable);
  }
  for (std::size_t j = 0; j < n; ++j) {
    FrozenMonomial plus = s.coeffs[j].plus / r.d[j];
    FrozenMonomial minus = s.coeffs[j].minus / r.d[j];
    for (std::size_t i = 0; i < n; ++i) {
      long b = s.b[i][j];
      if (b > 0) plus = plus * r.c[i].pow(static_cast<int>(b));
      if (b < 0) minus = minus * r.c[i].pow(static_cast<int>(-b));
    }
    out.coeffs[j] = {plus, minus};
  }
  return out;
}

Rescaling inverse(const Rescaling& r) {
  Rescaling out = r;
  for (auto& c : out.c) c = c.inverse();
  for (auto& d : out.d) d = d.inverse();
  return out;
}

Rescaling compose(const Rescaling& first, const Rescaling& second) {
  Rescaling out = first;
  for (std::size_t j = 0; j < out.c.size(); ++j) {
    out.c[j] = first.c[j] * second.c[j];
    out.d[j] = first.d[j] * second.d[j];
  }
  return out;
}

std::optional<Rescaling> seeds_equivalent(const SeedLike& a, const SeedLike& b) {
  if (a.n() != b.n() || a.m() != b.m() || a.num_mutable != b.num_mutable) return std::nullopt;
  if (a.b != b.b) return std::nullopt;
  if (!hatted_tuples_equal(hatted(a), hatted(b))) return std::nullopt;
  const std::size_t n = a.n();
  Rescaling r;
  for (std::size_t j = 0; j < n; ++j) {
    if (a.cluster[j].nvars() != b.cluster[j].nvars()) return std::nullopt;
    auto c = frozen_ratio(a.cluster[j], b.cluster[j], a.num_mutable);
    if (!c) return std::nullopt;
    r.c.push_back(*c);
  }
  for (std::size_t j = 0; j < n; ++j) {
    FrozenMonomial d = a.coeffs[j].plus / b.coeffs[j].plus;
    for (std::size_t i = 0; i < n; ++i) {
      if (a.b[i][j] > 0) d = d * r.c[i].pow(static_cast<int>(a.b[i][j]));
    }
    r.d.push_back(d);
  }
  // Equal hatted tuples force the minus parts to agree as well; confirm it.
  if (!(apply_rescaling(a, r) == b)) return std::nullopt;
  return r;
}

FrozenMonomial frozen_content(const LaurentPoly& x, std::size_t num_mutable) {
  if (x.is_zero()) throw AlgebraError("frozen content of zero");
  Exponents lo = x.min_exponents();
  return FrozenMonomial{Exponents(lo.begin() + static_cast<long>(num_mutable), lo.end())};
}

}  // namespace cqh
