#pragma once

#include <optional>
#include <vector>

#include "clusterqh/seeds.hpp"

namespace cqh {

// A seed whose coefficient pairs are stored explicitly and need not be
// normalized. Ambient variables from `num_mutable` on are the frozen ones.
struct SeedLike {
  IntMatrix b;
  std::vector<CoefficientPair> coeffs;
  std::vector<LaurentPoly> cluster;
  std::size_t num_mutable = 0;

  std::size_t n() const { return cluster.size(); }
  std::size_t m() const { return coeffs.empty() ? 0 : coeffs.front().plus.size(); }
  bool operator==(const SeedLike& o) const {
    return b == o.b && coeffs == o.coeffs && cluster == o.cluster && num_mutable == o.num_mutable;
  }
};

SeedLike as_seed_like(const Seed& seed);

std::vector<Fraction> hatted(const SeedLike& s);

// Mutation with the representative p+' = p+ (p+_k)^[b_kj]+ and
// p-' = p- (p-_k)^[-b_kj]+ for j != k.
SeedLike mutate_seedlike(const SeedLike& s, std::size_t k);

struct Rescaling {
  std::vector<FrozenMonomial> c;
  std::vector<FrozenMonomial> d;

  static Rescaling identity(std::size_t n, std::size_t m);
  bool operator==(const Rescaling& o) const { return c == o.c && d == o.d; }
};

SeedLike apply_rescaling(const SeedLike& s, const Rescaling& r);
Rescaling inverse(const Rescaling& r);
// Rescaling equal to applying `first` and then `second`.
Rescaling compose(const Rescaling& first, const Rescaling& second);

// A witness r with apply_rescaling(a, r) == b, if the seeds lie in one orbit.
std::optional<Rescaling> seeds_equivalent(const SeedLike& a, const SeedLike& b);

// Componentwise minimum of the frozen exponents over all terms of x.
FrozenMonomial frozen_content(const LaurentPoly& x, std::size_t num_mutable);

}  // namespace cqh
