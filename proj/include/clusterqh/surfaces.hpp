#pragma once

// Lamination endpoint data on marked surfaces and the lattice criterion for
// which tagged mapping classes act as quasi-automorphisms.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterqh/lattice.hpp"
#include "clusterqh/quasihom.hpp"
#include "clusterqh/seeds.hpp"

namespace cqh {

class SurfaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ComponentKind { puncture, boundary };

struct EvenComponent {
  std::string label;
  ComponentKind kind = ComponentKind::boundary;
  int cilia = 0;  // boundary components only; must be even
};

struct EvenComponentTable {
  std::vector<EvenComponent> components;

  std::size_t r() const { return components.size(); }
  void validate() const;
};

enum class EndKind { boundary, spiral, odd };
enum class Color { black, white };
enum class Spiral { cw, ccw };

// One end of a lamination curve. For boundary ends `color` is the color of
// the nearest cilium clockwise from the end; for spiral ends `direction` is
// the spiraling direction; odd ends carry no data.
struct CurveEnd {
  EndKind kind = EndKind::odd;
  std::size_t component = 0;
  Color color = Color::black;
  Spiral direction = Spiral::ccw;
};

struct Curve {
  std::array<CurveEnd, 2> ends;
};

struct CurveEndData {
  std::vector<Curve> curves;
};

using PairingVector = IntRow;

PairingVector pairing_vector(const CurveEndData& lamination, const EvenComponentTable& table);

// Square matrix with entries in {-1, 0, 1} and one nonzero per row and column.
struct SignedPermutation {
  IntMatrix m;

  static SignedPermutation identity(std::size_t r);
  std::size_t r() const { return m.size(); }
  void validate() const;
  // Component that component i is sent to, and the sign.
  std::pair<std::size_t, long> image(std::size_t i) const;
  SignedPermutation operator*(const SignedPermutation& o) const;
  SignedPermutation inverse() const;
  bool operator==(const SignedPermutation& o) const { return m == o.m; }
  bool operator<(const SignedPermutation& o) const { return m < o.m; }
};

PairingVector act_on_pairing(const SignedPermutation& g, const PairingVector& p);

// Moves every end along the signed permutation; a negative sign swaps colors
// and spiral directions.
CurveEndData act_on_lamination(const SignedPermutation& g, const CurveEndData& lamination);

// Whether g maps the integer lattice spanned by V onto itself.
bool lattice_fixed(const SignedPermutation& g, const std::vector<PairingVector>& v);

enum class SubgroupVerdict { always, sometimes };

struct SubgroupTestResult {
  SubgroupVerdict verdict = SubgroupVerdict::always;
  std::optional<CurveEndData> witness;  // a lamination whose lattice g does not fix
  std::string description;
};

// Requires every component in the table to be a boundary component or a puncture;
// the witness uses black boundary ends, or counterclockwise spirals at punctures.
SubgroupTestResult qa_subgroup_test(const SignedPermutation& g, const EvenComponentTable& table);

// All signed permutations generated by the given ones.
std::vector<SignedPermutation> generated_group(const std::vector<SignedPermutation>& gens);

struct LaminationShear {
  IntRow b;                         // one entry per arc of the triangulation
  std::optional<IntRow> measures;   // arcs followed by boundary segments
  bool spiraling = false;
};

// Checks -2 b == l * btilde_boundary, where btilde_boundary has one row per
// arc and boundary segment and one column per arc.
bool shear_relation_check(const IntMatrix& btilde_boundary, const LaminationShear& shear);

// p(gamma; C) per arc (rows) and even component (columns).
struct ArcPairingTable {
  IntMatrix p;

  void validate() const;
  IntRow kernel_vector(std::size_t component) const;
};

long residue(const IntRow& b, const ArcPairingTable& table, std::size_t component);

bool kernel_basis_check(const IntMatrix& principal, const ArcPairingTable& table);

struct SurfaceType {
  int genus = 0;
  int punctures = 0;
  std::vector<int> boundary_marked;  // marked points per boundary component
};

bool is_exceptional(const SurfaceType& s);
// Throws SurfaceError for the surfaces where tagged mapping classes and the
// cluster modular group differ.
void require_not_exceptional(const SurfaceType& s);

struct MappingClassData {
  std::string name;
  SignedPermutation pi;
  std::optional<MutationWord> word;  // mutations from the base triangulation to its image
};

struct AnnulusFixture {
  SurfaceType surface;
  EvenComponentTable components;
  Seed base;                 // arcs a, b, c, d and the frozen lamination variable
  Seed rho2_target;          // formal seed at the image of the base under rho^2
  MonomialMap rho2_map;      // from the base ambient to the target ambient
  CurveEndData lamination;
  LaminationShear shear;
  IntMatrix btilde_boundary;
  ArcPairingTable arc_pairings;
  std::vector<MappingClassData> generators;  // rho, tau, sigma
  MutationWord rho_word;
  MutationWord rho2_word;
};

AnnulusFixture annulus_fixture();

// Exponent of the frozen variable in Psi(x) / xbar for each cluster variable
// at the end of each word, comparing the base pattern with the target one.
std::vector<std::vector<long>> qa_frozen_exponents(const MonomialMap& map, const Seed& src, const Seed& dst,
                                                   const std::vector<MutationWord>& words);

nlohmann::json to_json(const CurveEndData& lamination);
CurveEndData curve_end_data_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SignedPermutation& g);
SignedPermutation signed_permutation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EvenComponentTable& t);
EvenComponentTable component_table_from_json(const nlohmann::json& j);

}  // namespace cqh
