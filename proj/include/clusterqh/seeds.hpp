#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterqh/exact_algebra.hpp"
#include "clusterqh/lattice.hpp"

namespace cqh {

class SeedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Extended exchange matrix: n + m rows, n columns. The top n x n block must be
// skew-symmetrizable; the remaining rows are coefficient rows.
class ExtMatrix {
 public:
  ExtMatrix() = default;
  ExtMatrix(std::size_t n, std::size_t m, IntMatrix entries);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  long operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const IntMatrix& entries() const { return entries_; }
  IntMatrix principal() const;
  IntMatrix coefficient_rows() const;
  IntRow column(std::size_t j) const;

  bool operator==(const ExtMatrix& o) const {
    return n_ == o.n_ && m_ == o.m_ && entries_ == o.entries_;
  }
  bool operator!=(const ExtMatrix& o) const { return !(*this == o); }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  IntMatrix entries_;
};

// Smallest positive integers d with d_i b_ij == -d_j b_ji; throws SeedError if none exist.
std::vector<long> skew_symmetrizer(const IntMatrix& principal);

ExtMatrix mutate_matrix(const ExtMatrix& b, std::size_t k);

bool is_indecomposable(const IntMatrix& principal);

struct Arrow {
  std::size_t from;
  std::size_t to;
  long mult;
};

// Skew-symmetric extended matrix from a quiver on n mutable and m frozen vertices.
ExtMatrix btilde_from_quiver(std::size_t n, std::size_t m, const std::vector<Arrow>& arrows);

struct CoefficientPair {
  FrozenMonomial plus;
  FrozenMonomial minus;
  bool operator==(const CoefficientPair& o) const { return plus == o.plus && minus == o.minus; }
};

// A seed of geometric type. Cluster entries are Laurent polynomials in the
// n + m ambient variables; ambient variables n..n+m-1 are the frozen ones.
struct Seed {
  ExtMatrix btilde;
  std::vector<LaurentPoly> cluster;
  std::vector<std::string> var_names;

  static Seed initial(const ExtMatrix& b, std::vector<std::string> names = {});

  std::size_t n() const { return btilde.n(); }
  std::size_t m() const { return btilde.m(); }
  std::size_t ambient_size() const { return btilde.n() + btilde.m(); }
  void validate() const;

  bool operator==(const Seed& o) const { return btilde == o.btilde && cluster == o.cluster; }
  bool operator!=(const Seed& o) const { return !(*this == o); }
};

using MutationWord = std::vector<std::size_t>;

CoefficientPair coefficient_pair(const Seed& seed, std::size_t k);
std::vector<CoefficientPair> coefficient_pairs(const Seed& seed);

// Both terms of the exchange relation in direction k.
std::pair<LaurentPoly, LaurentPoly> exchange_terms(const Seed& seed, std::size_t k);

Seed mutate_seed(const Seed& seed, std::size_t k);
Seed mutate_along(const Seed& seed, const MutationWord& word);

// Hatted variables from principal part, coefficient pairs and cluster.
std::vector<Fraction> hatted_from(const IntMatrix& principal, const std::vector<CoefficientPair>& coeffs,
                                  const std::vector<LaurentPoly>& cluster);
std::vector<Fraction> hatted(const Seed& seed);

// Propagates hatted variables across a mutation in direction k using only the
// principal part before mutation.
std::vector<Fraction> propagate_hatted(const std::vector<Fraction>& y, const IntMatrix& principal,
                                       std::size_t k);

bool hatted_tuples_equal(const std::vector<Fraction>& a, const std::vector<Fraction>& b);

// False also when the exchange relation in direction k is not an exact division.
bool hatted_mutation_check(const Seed& seed, std::size_t k);

Seed opposite_seed(const Seed& seed);

nlohmann::json to_json(const Seed& seed);
Seed seed_from_json(const nlohmann::json& j);
std::vector<Arrow> arrows_from_json(const nlohmann::json& j);

}  // namespace cqh
