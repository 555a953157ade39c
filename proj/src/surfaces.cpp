#include "clusterqh/surfaces.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "clusterqh/patterns.hpp"

namespace cqh {

void EvenComponentTable::validate() const {
  for (const auto& c : components) {
    if (c.kind == ComponentKind::boundary && (c.cilia <= 0 || c.cilia % 2 != 0)) {
      throw SurfaceError("even boundary component " + c.label + " needs a positive even cilia count");
    }
    if (c.kind == ComponentKind::puncture && c.cilia != 0) {
      throw SurfaceError("puncture " + c.label + " cannot carry cilia");
    }
  }
}

PairingVector pairing_vector(const CurveEndData& lamination, const EvenComponentTable& table) {
  PairingVector p(table.r(), 0);
  for (const auto& curve : lamination.curves) {
    for (const auto& end : curve.ends) {
      if (end.kind == EndKind::odd) continue;
      if (end.component >= table.r()) throw SurfaceError("lamination end refers to a missing component");
      const auto& comp = table.components[end.component];
      if (end.kind == EndKind::boundary) {
        if (comp.kind != ComponentKind::boundary) throw SurfaceError("boundary end on a puncture");
        p[end.component] += end.color == Color::black ? 1 : -1;
      } else {
        if (comp.kind != ComponentKind::puncture) throw SurfaceError("spiraling end on a boundary component");
        p[end.component] += end.direction == Spiral::ccw ? 1 : -1;
      }
    }
  }
  return p;
}

SignedPermutation SignedPermutation::identity(std::size_t r) { return {identity_matrix(r)}; }

void SignedPermutation::validate() const {
  const std::size_t r = m.size();
  std::vector<int> col_count(r, 0);
  for (const auto& row : m) {
    if (row.size() != r) throw SurfaceError("signed permutation must be square");
    int nonzero = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (row[j] < -1 || row[j] > 1) throw SurfaceError("signed permutation entries lie in {-1,0,1}");
      if (row[j] != 0) {
        ++nonzero;
        ++col_count[j];
      }
    }
    if (nonzero != 1) throw SurfaceError("signed permutation needs one nonzero per row");
  }
  for (int c : col_count) {
    if (c != 1) throw SurfaceError("signed permutation needs one nonzero per column");
  }
}

std::pair<std::size_t, long> SignedPermutation::image(std::size_t i) const {
  for (std::size_t row = 0; row < m.size(); ++row) {
    if (m[row][i] != 0) return {row, m[row][i]};
  }
  throw SurfaceError("column without a nonzero entry");
}

SignedPermutation SignedPermutation::operator*(const SignedPermutation& o) const { return {matmul(m, o.m)}; }

SignedPermutation SignedPermutation::inverse() const { return {transpose(m)}; }

PairingVector act_on_pairing(const SignedPermutation& g, const PairingVector& p) {
  if (g.r() != p.size()) throw DimensionMismatch("signed permutation and pairing vector differ in size");
  PairingVector out(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) out[i] += g.m[i][j] * p[j];
  }
  return out;
}

CurveEndData act_on_lamination(const SignedPermutation& g, const CurveEndData& lamination) {
  CurveEndData out = lamination;
  for (auto& curve : out.curves) {
    for (auto& end : curve.ends) {
      if (end.kind == EndKind::odd) continue;
      auto [target, sign] = g.image(end.component);
      end.component = target;
      if (sign < 0) {
        end.color = end.color == Color::black ? Color::white : Color::black;
        end.direction = end.direction == Spiral::cw ? Spiral::ccw : Spiral::cw;
      }
    }
  }
  return out;
}

bool lattice_fixed(const SignedPermutation& g, const std::vector<PairingVector>& v) {
  g.validate();
  if (v.empty()) return true;
  IntMatrix image;
  for (const auto& p : v) image.push_back(act_on_pairing(g, p));
  return same_row_lattice(v, image, g.r());
}

namespace {

CurveEnd black_end(const EvenComponentTable& table, std::size_t i) {
  CurveEnd e;
  e.component = i;
  if (table.components[i].kind == ComponentKind::boundary) {
    e.kind = EndKind::boundary;
    e.color = Color::black;
  } else {
    e.kind = EndKind::spiral;
    e.direction = Spiral::ccw;
  }
  return e;
}

}  // namespace

SubgroupTestResult qa_subgroup_test(const SignedPermutation& g, const EvenComponentTable& table) {
  g.validate();
  if (g.r() != table.r()) throw DimensionMismatch("signed permutation and component table differ in size");
  const IntMatrix id = identity_matrix(g.r());
  IntMatrix neg = id;
  for (auto& row : neg) {
    for (auto& x : row) x = -x;
  }
  SubgroupTestResult res;
  if (g.m == id || g.m == neg) {
    res.verdict = SubgroupVerdict::always;
    res.description = "signed permutation is plus or minus the identity";
    return res;
  }
  res.verdict = SubgroupVerdict::sometimes;
  for (std::size_t i = 0; i < g.r(); ++i) {
    if (g.image(i).first != i) {
      res.witness = CurveEndData{{Curve{{black_end(table, i), black_end(table, i)}}}};
      res.description = "curve with two positive ends on " + table.components[i].label;
      return res;
    }
  }
  // Diagonal with both signs present.
  std::size_t flipped = 0, kept = 0;
  for (std::size_t i = 0; i < g.r(); ++i) {
    if (g.image(i).second < 0) {
      flipped = i;
    } else {
      kept = i;
    }
  }
  res.witness = CurveEndData{{Curve{{black_end(table, flipped), black_end(table, kept)}}}};
  res.description = "curve joining " + table.components[flipped].label + " and " +
                    table.components[kept].label + " with positive ends";
  return res;
}

std::vector<SignedPermutation> generated_group(const std::vector<SignedPermutation>& gens) {
  if (gens.empty()) return {};
  std::set<SignedPermutation> seen{SignedPermutation::identity(gens.front().r())};
  std::deque<SignedPermutation> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    SignedPermutation g = queue.front();
    queue.pop_front();
    for (const auto& h : gens) {
      SignedPermutation gh = g * h;
      if (seen.insert(gh).second) queue.push_back(gh);
    }
  }
  return {seen.begin(), seen.end()};
}

bool shear_relation_check(const IntMatrix& btilde_boundary, const LaminationShear& shear) {
  if (shear.spiraling) throw SurfaceError("the shear relation is only available without spiraling ends");
  if (!shear.measures) throw SurfaceError("transverse measures are required");
  const IntRow& l = *shear.measures;
  if (l.size() != btilde_boundary.size()) throw DimensionMismatch("one measure per arc and boundary segment");
  const std::size_t arcs = shear.b.size();
  for (const auto& row : btilde_boundary) {
    if (row.size() != arcs) throw DimensionMismatch("one column per arc");
  }
  for (std::size_t j = 0; j < arcs; ++j) {
    long lhs = -2 * shear.b[j], rhs = 0;
    for (std::size_t i = 0; i < l.size(); ++i) rhs += l[i] * btilde_boundary[i][j];
    if (lhs != rhs) return false;
  }
  return true;
}

void ArcPairingTable::validate() const {
  std::size_t r = p.empty() ? 0 : p.front().size();
  for (const auto& row : p) {
    if (row.size() != r) throw DimensionMismatch("ragged arc pairing table");
    for (long x : row) {
      if (x < -2 || x > 2) throw SurfaceError("arc pairings lie in [-2, 2]");
    }
  }
}

IntRow ArcPairingTable::kernel_vector(std::size_t component) const {
  IntRow out;
  for (const auto& row : p) out.push_back(row.at(component));
  return out;
}

long residue(const IntRow& b, const ArcPairingTable& table, std::size_t component) {
  if (b.size() != table.p.size()) throw DimensionMismatch("one shear entry per arc");
  long acc = 0;
  for (std::size_t g = 0; g < b.size(); ++g) acc += table.p[g].at(component) * b[g];
  return acc;
}

bool kernel_basis_check(const IntMatrix& principal, const ArcPairingTable& table) {
  table.validate();
  const std::size_t n = principal.size();
  if (table.p.size() != n) throw DimensionMismatch("one pairing row per arc");
  const std::size_t r = table.p.empty() ? 0 : table.p.front().size();
  IntMatrix kernel_rows;
  for (std::size_t c = 0; c < r; ++c) kernel_rows.push_back(table.kernel_vector(c));
  if (r > 0 && integer_rank(kernel_rows) != r) return false;
  for (const auto& v : kernel_rows) {
    for (const auto& row : principal) {
      long dot = 0;
      for (std::size_t j = 0; j < n; ++j) dot += row[j] * v[j];
      if (dot != 0) return false;
    }
  }
  return n - integer_rank(principal) == r;
}

bool is_exceptional(const SurfaceType& s) {
  if (s.genus != 0) return false;
  if (s.boundary_marked.empty()) return s.punctures == 4;
  if (s.boundary_marked.size() != 1) return false;
  const int marked = s.boundary_marked.front();
  if (marked == 4) return s.punctures == 1;
  if (marked == 2) return s.punctures == 1 || s.punctures == 2;
  return false;
}

void require_not_exceptional(const SurfaceType& s) {
  if (is_exceptional(s)) {
    throw SurfaceError(
        "exceptional surface: its cluster modular group is larger than the tagged mapping class "
        "group, so the lattice criterion does not describe all quasi-automorphisms");
  }
}

AnnulusFixture annulus_fixture() {
  AnnulusFixture fx;
  fx.surface = {0, 0, {2, 2}};
  require_not_exceptional(fx.surface);
  fx.components.components = {{"inner", ComponentKind::boundary, 2}, {"outer", ComponentKind::boundary, 2}};

  // Arcs a, b, c, d are variables 0..3 and the lamination is variable 4.
  const std::vector<Arrow> arrows{{0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {4, 2, 2}};
  fx.base = Seed::initial(btilde_from_quiver(4, 1, arrows), {"xa", "xb", "xc", "xd", "xL"});

  fx.rho_word = {0, 1};
  fx.rho2_word = {0, 1, 2, 3};
  // After the four flips, positions 2 and 3 hold the images of d and c.
  Seed reached = permute_seed(mutate_along(fx.base, fx.rho2_word), {0, 1, 3, 2});
  fx.rho2_target = Seed::initial(reached.btilde, {"xe", "xf", "xg", "xh", "xL"});

  fx.rho2_map.matrix = identity_matrix(5);
  fx.rho2_map.matrix[4] = {-1, -1, -1, -1, 1};
  fx.rho2_map.src_n = fx.rho2_map.dst_n = 4;
  fx.rho2_map.src_m = fx.rho2_map.dst_m = 1;
  fx.rho2_map.src_vars = fx.base.var_names;
  fx.rho2_map.dst_vars = fx.rho2_target.var_names;

  // Two parallel curves, each ending near a white cilium on both boundaries.
  CurveEnd inner{EndKind::boundary, 0, Color::white, Spiral::ccw};
  CurveEnd outer{EndKind::boundary, 1, Color::white, Spiral::ccw};
  fx.lamination.curves = {Curve{{inner, outer}}, Curve{{inner, outer}}};

  // Rows: arcs a, b, c, d, then the boundary segments inner-right,
  // outer-right, inner-left, outer-left.
  fx.btilde_boundary = {{0, 0, 1, 1},  {0, 0, 1, 1},  {-1, -1, 0, 0}, {-1, -1, 0, 0},
                        {1, 0, -1, 0}, {0, 1, -1, 0}, {0, 1, 0, -1},  {1, 0, 0, -1}};
  fx.shear.b = {0, 0, 2, 0};
  fx.shear.measures = IntRow{0, 0, 2, 0, 2, 2, 0, 0};

  fx.arc_pairings.p = {{1, -1}, {-1, 1}, {-1, -1}, {1, 1}};

  fx.generators = {{"rho", {{{-1, 0}, {0, 1}}}, fx.rho_word},
                   {"tau", {{{1, 0}, {0, -1}}}, std::nullopt},
                   {"sigma", {{{0, 1}, {1, 0}}}, std::nullopt}};
  return fx;
}

std::vector<std::vector<long>> qa_frozen_exponents(const MonomialMap& map, const Seed& src, const Seed& dst,
                                                   const std::vector<MutationWord>& words) {
  std::vector<std::vector<long>> out;
  for (const auto& w : words) {
    Seed s = mutate_along(src, w), t = mutate_along(dst, w);
    std::vector<long> row;
    for (std::size_t i = 0; i < s.n(); ++i) {
      auto q = frozen_ratio(apply_map(map, s.cluster[i]), t.cluster[i], dst.n());
      if (!q) throw SurfaceError("image of a cluster variable is not a frozen multiple of its target");
      row.insert(row.end(), q->exps.begin(), q->exps.end());
    }
    out.push_back(row);
  }
  return out;
}

namespace {

nlohmann::json end_to_json(const CurveEnd& e) {
  switch (e.kind) {
    case EndKind::boundary:
      return {{"kind", "boundary"}, {"component", e.component},
              {"color", e.color == Color::black ? "black" : "white"}};
    case EndKind::spiral:
      return {{"kind", "spiral"}, {"component", e.component},
              {"direction", e.direction == Spiral::cw ? "cw" : "ccw"}};
    case EndKind::odd:
      break;
  }
  return {{"kind", "odd"}};
}

CurveEnd end_from_json(const nlohmann::json& j) {
  CurveEnd e;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "odd") return e;
  e.component = j.at("component").get<std::size_t>();
  if (kind == "boundary") {
    e.kind = EndKind::boundary;
    const std::string c = j.at("color").get<std::string>();
    if (c != "black" && c != "white") throw SurfaceError("unknown color " + c);
    e.color = c == "black" ? Color::black : Color::white;
  } else if (kind == "spiral") {
    e.kind = EndKind::spiral;
    const std::string d = j.at("direction").get<std::string>();
    if (d != "cw" && d != "ccw") throw SurfaceError("unknown spiral direction " + d);
    e.direction = d == "cw" ? Spiral::cw : Spiral::ccw;
  } else {
    throw SurfaceError("unknown end kind " + kind);
  }
  return e;
}

}  // namespace

nlohmann::json to_json(const CurveEndData& lamination) {
  nlohmann::json curves = nlohmann::json::array();
  for (const auto& c : lamination.curves) curves.push_back({end_to_json(c.ends[0]), end_to_json(c.ends[1])});
  return {{"ends", curves}};
}

CurveEndData curve_end_data_from_json(const nlohmann::json& j) {
  CurveEndData out;
  for (const auto& c : j.at("ends")) {
    if (c.size() != 2) throw SurfaceError("every curve has two ends");
    out.curves.push_back(Curve{{end_from_json(c[0]), end_from_json(c[1])}});
  }
  return out;
}

nlohmann::json to_json(const SignedPermutation& g) { return g.m; }

SignedPermutation signed_permutation_from_json(const nlohmann::json& j) {
  SignedPermutation g{j.get<IntMatrix>()};
  g.validate();
  return g;
}

nlohmann::json to_json(const EvenComponentTable& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : t.components) {
    out.push_back({{"label", c.label},
                   {"kind", c.kind == ComponentKind::boundary ? "boundary" : "puncture"},
                   {"cilia", c.cilia}});
  }
  return out;
}

EvenComponentTable component_table_from_json(const nlohmann::json& j) {
  EvenComponentTable t;
  for (const auto& c : j) {
    EvenComponent e;
    e.label = c.at("label").get<std::string>();
    const std::string kind = c.at("kind").get<std::string>();
    if (kind != "boundary" && kind != "puncture") throw SurfaceError("unknown component kind " + kind);
    e.kind = kind == "boundary" ? ComponentKind::boundary : ComponentKind::puncture;
    e.cilia = c.value("cilia", 0);
    t.components.push_back(e);
  }
  t.validate();
  return t;
}

}  // namespace cqh
