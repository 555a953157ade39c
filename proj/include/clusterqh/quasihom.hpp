#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterqh/nerve.hpp"
#include "clusterqh/orbits.hpp"
#include "clusterqh/seeds.hpp"

namespace cqh {

class PrincipalMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecomposableTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exponent matrix of a monomial map: column j holds the exponents of the image
// of source variable j. Rows and columns are ordered mutable-then-frozen.
struct MonomialMap {
  IntMatrix matrix;
  std::size_t src_n = 0, src_m = 0;
  std::size_t dst_n = 0, dst_m = 0;
  std::vector<std::string> src_vars;
  std::vector<std::string> dst_vars;

  static MonomialMap identity(std::size_t n, std::size_t m);

  std::size_t src_size() const { return src_n + src_m; }
  std::size_t dst_size() const { return dst_n + dst_m; }
  // Frozen source variables go to frozen monomials.
  bool preserves_coefficients() const;
  void validate() const;
};

// Composite "second after first".
MonomialMap compose(const MonomialMap& second, const MonomialMap& first);

LaurentPoly apply_map(const MonomialMap& M, const LaurentPoly& f);
FrozenMonomial apply_map(const MonomialMap& M, const FrozenMonomial& q);

// The image of a seed under the map, as a seed with explicit coefficient pairs.
SeedLike image_seed(const MonomialMap& M, const Seed& seed);
SeedLike image_seed(const MonomialMap& M, const SeedLike& seed);

struct QhReport {
  bool coefficient_preserving = false;
  bool principal_equal = false;
  bool matrix_identity = false;
  std::vector<std::optional<FrozenMonomial>> witnesses;  // Psi(x_i) / xbar_i
  bool verdict = false;
  std::string failure;

  nlohmann::json to_json() const;
};

QhReport verify_qh_report(const MonomialMap& M, const Seed& src, const Seed& dst);
bool verify_qh(const MonomialMap& M, const Seed& src, const Seed& dst);

struct ConstructResult {
  std::optional<MonomialMap> map;
  bool rational_solvable = false;
  std::optional<std::size_t> failing_row;  // coefficient row of dst outside the integer span
};

// Throws PrincipalMismatch if the principal parts differ.
ConstructResult construct_qh_detailed(const ExtMatrix& src, const ExtMatrix& dst);
std::optional<MonomialMap> construct_qh(const ExtMatrix& src, const ExtMatrix& dst);

// The semifield map c = tropicalize after applying M.
class NormalizationMap {
 public:
  explicit NormalizationMap(MonomialMap M) : M_(std::move(M)) {}
  FrozenMonomial operator()(const LaurentPoly& f) const;
  FrozenMonomial operator()(const Fraction& f) const;

 private:
  MonomialMap M_;
};

NormalizationMap normalization_map(const MonomialMap& M);

std::vector<FrozenMonomial> transported_y(const MonomialMap& M, const Seed& seed);

struct Grading {
  IntMatrix matrix;
};

std::optional<Grading> proportional(const MonomialMap& M1, const MonomialMap& M2, const ExtMatrix& b);

IntMatrix grading_space(const ExtMatrix& b);

// W after M sends every cluster variable of src and of its star neighborhood
// to a frozen-monomial multiple of itself.
bool quasi_inverse_check(const MonomialMap& M, const MonomialMap& W, const Seed& src);

enum class NerveVerdict { qh_to_E, qh_to_E_opp, fail };
std::string to_string(NerveVerdict v);

// Patterns are given by base seeds at the root of the tree; the tree
// isomorphism matches roots and labels.
NerveVerdict check_on_nerve(const MonomialMap& M, const Nerve& nerve, const Seed& src_base,
                            const Seed& dst_base);

nlohmann::json to_json(const MonomialMap& M);
MonomialMap monomial_map_from_json(const nlohmann::json& j, std::size_t src_n, std::size_t dst_n);

}  // namespace cqh
