// Command-line driver: reads seeds and maps as JSON, runs the library
// checks and prints machine-readable reports. The exit code is 0 exactly when
// every requested check passes.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "clusterqh/grassmann.hpp"
#include "clusterqh/orbits.hpp"
#include "clusterqh/patterns.hpp"
#include "clusterqh/quasihom.hpp"
#include "clusterqh/seeds.hpp"
#include "clusterqh/surfaces.hpp"

using nlohmann::json;
using namespace cqh;

namespace {

// Worker threads for independent check suites, from CQH_THREADS (default 1).
std::size_t thread_count() {
  const char* env = std::getenv("CQH_THREADS");
  if (env == nullptr) return 1;
  try {
    long v = std::stol(env);
    return v > 0 ? static_cast<std::size_t>(v) : 1;
  } catch (const std::exception&) {
    return 1;
  }
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return json::parse(in);
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << j.dump(2) << "\n";
}

int finish(const json& report, bool ok, const std::string& out_path) {
  emit(report, out_path);
  return ok ? 0 : 1;
}

std::string seed_text(const Seed& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.n(); ++i) out << "x" << i << " = " << s.cluster[i].to_string(s.var_names) << "\n";
  return out.str();
}

int cmd_mutate(const std::string& seed_path, const std::vector<std::size_t>& word, const std::string& out_path,
               const std::string& format) {
  Seed s = seed_from_json(read_json(seed_path));
  json exchanged = json::array();
  for (std::size_t step = 0; step < word.size(); ++step) {
    const std::size_t k = word[step];
    if (k >= s.n()) {
      return finish({{"error", "direction out of range"}, {"step", step}}, false, "");
    }
    Seed next;
    try {
      next = mutate_seed(s, k);
    } catch (const NotDivisible& e) {
      return finish({{"error", std::string("exchange relation not divisible: ") + e.what()}, {"step", step}},
                    false, "");
    }
    exchanged.push_back({{"step", step},
                         {"direction", k},
                         {"old", s.cluster[k].to_string(s.var_names)},
                         {"new", next.cluster[k].to_string(next.var_names)}});
    s = std::move(next);
  }
  if (format == "text") {
    std::cout << seed_text(s);
    if (!out_path.empty()) emit(to_json(s), out_path);
  } else if (out_path.empty()) {
    emit({{"exchanged", exchanged}, {"seed", to_json(s)}}, "");
  } else {
    emit(to_json(s), out_path);
    emit({{"exchanged", exchanged}}, "");
  }
  return 0;
}

int cmd_explore(const std::string& seed_path, std::size_t depth, std::size_t nodes, const std::string& format,
                const std::string& out_path) {
  Seed s = seed_from_json(read_json(seed_path));
  ExplorationGraph g = explore(s, depth, nodes);
  if (format == "dot") {
    std::cout << to_dot(g);
    return 0;
  }
  json j = to_json(g);
  j["single_cycle"] = is_single_cycle(g);
  if (format == "text") {
    std::cout << g.nodes.size() << " seeds, " << g.edges.size() << " edges, "
              << (g.complete() ? "complete" : "truncated") << "\n";
    return 0;
  }
  emit(j, out_path);
  return 0;
}

int cmd_verify_qh(const std::string& map_path, const std::string& src_path, const std::string& dst_path,
                  const std::string& inverse_path, const std::string& out_path) {
  Seed src = seed_from_json(read_json(src_path));
  Seed dst = seed_from_json(read_json(dst_path));
  MonomialMap M = monomial_map_from_json(read_json(map_path), src.n(), dst.n());
  QhReport r = verify_qh_report(M, src, dst);
  json report = r.to_json();
  bool ok = r.verdict;
  if (!inverse_path.empty()) {
    MonomialMap W = monomial_map_from_json(read_json(inverse_path), dst.n(), src.n());
    bool qi = quasi_inverse_check(M, W, src);
    report["quasi_inverse"] = qi;
    ok = ok && qi;
  }
  return finish(report, ok, out_path);
}

int cmd_construct_qh(const std::string& src_path, const std::string& dst_path, const std::string& out_path) {
  Seed src = seed_from_json(read_json(src_path));
  Seed dst = seed_from_json(read_json(dst_path));
  ConstructResult res;
  try {
    res = construct_qh_detailed(src.btilde, dst.btilde);
  } catch (const PrincipalMismatch& e) {
    return finish({{"found", false}, {"error", e.what()}}, false, out_path);
  }
  json report{{"found", res.map.has_value()}, {"rational_solvable", res.rational_solvable}};
  if (res.failing_row) report["failing_row"] = *res.failing_row;
  if (res.map) {
    MonomialMap M = *res.map;
    M.src_vars = src.var_names;
    M.dst_vars = dst.var_names;
    report["map"] = to_json(M);
  }
  return finish(report, res.map.has_value(), out_path);
}

int cmd_gradings(const std::string& seed_path, const std::string& out_path) {
  Seed s = seed_from_json(read_json(seed_path));
  IntMatrix g = grading_space(s.btilde);
  return finish({{"gradings", g}, {"dimension", g.size()}}, true, out_path);
}

int cmd_orbit_eq(const std::string& a_path, const std::string& b_path, const std::string& out_path) {
  Seed a = seed_from_json(read_json(a_path));
  Seed b = seed_from_json(read_json(b_path));
  if (a.ambient_size() != b.ambient_size()) {
    return finish({{"equivalent", false}, {"error", "seeds live in different ambients"}}, false, out_path);
  }
  auto r = seeds_equivalent(as_seed_like(a), as_seed_like(b));
  json report{{"equivalent", r.has_value()}};
  if (r) {
    json c = json::array(), d = json::array();
    for (const auto& x : r->c) c.push_back(x.exps);
    for (const auto& x : r->d) d.push_back(x.exps);
    report["rescaling"] = {{"c", c}, {"d", d}};
  }
  return finish(report, r.has_value(), out_path);
}

json annulus_report(bool& ok) {
  AnnulusFixture fx = annulus_fixture();
  json j;
  QhReport qh = verify_qh_report(fx.rho2_map, fx.base, fx.rho2_target);
  j["rho2_quasi_automorphism"] = qh.to_json();
  ok = qh.verdict;

  PairingVector p = pairing_vector(fx.lamination, fx.components);
  j["pairing_vector"] = p;
  std::vector<SignedPermutation> gens;
  for (const auto& g : fx.generators) gens.push_back(g.pi);
  auto group = generated_group(gens);
  std::size_t fixed = 0, plus_minus = 0;
  const IntMatrix id = identity_matrix(2);
  const IntMatrix neg = {{-1, 0}, {0, -1}};
  json elements = json::array();
  for (const auto& g : group) {
    bool f = lattice_fixed(g, {p});
    fixed += f;
    plus_minus += (g.m == id || g.m == neg);
    elements.push_back({{"matrix", g.m}, {"fixes_lattice", f}});
  }
  j["signed_permutation_image"] = elements;
  j["qaut_index"] = group.size() / std::max<std::size_t>(fixed, 1);
  j["plus_minus_identity_index"] = group.size() / std::max<std::size_t>(plus_minus, 1);
  ok = ok && fixed * 2 == group.size() && plus_minus * 4 == group.size();

  bool kernel = kernel_basis_check(fx.base.btilde.principal(), fx.arc_pairings);
  json residues = json::array();
  bool residues_match = true;
  for (std::size_t c = 0; c < fx.components.r(); ++c) {
    long r = residue(fx.shear.b, fx.arc_pairings, c);
    residues.push_back(r);
    residues_match = residues_match && r == p[c];
  }
  bool shear = shear_relation_check(fx.btilde_boundary, fx.shear);
  j["kernel_basis"] = kernel;
  j["residues"] = residues;
  j["residues_match_pairings"] = residues_match;
  j["shear_relation"] = shear;
  ok = ok && kernel && residues_match && shear;
  j["all_passed"] = ok;
  return j;
}

int cmd_surface(const std::string& demo, const std::string& lam_path, const std::string& comp_path,
                const std::string& perm_path, const std::string& out_path) {
  if (!demo.empty()) {
    if (demo != "annulus") return finish({{"error", "unknown demo " + demo}}, false, "");
    bool ok = false;
    json j = annulus_report(ok);
    return finish(j, ok, out_path);
  }
  if (lam_path.empty() || comp_path.empty()) {
    return finish({{"error", "need --lamination and --components, or --demo"}}, false, "");
  }
  EvenComponentTable table = component_table_from_json(read_json(comp_path));
  json lam = read_json(lam_path);
  PairingVector p = pairing_vector(curve_end_data_from_json(lam), table);
  json report{{"pairing_vector", p}};
  bool ok = true;
  if (!perm_path.empty()) {
    SignedPermutation g = signed_permutation_from_json(read_json(perm_path));
    bool fixed = lattice_fixed(g, {p});
    SubgroupTestResult t = qa_subgroup_test(g, table);
    report["image"] = act_on_pairing(g, p);
    report["lattice_fixed"] = fixed;
    report["always_quasi_automorphism"] = t.verdict == SubgroupVerdict::always;
    if (t.witness) report["witness"] = to_json(*t.witness);
    report["witness_description"] = t.description;
    ok = fixed;
  }
  return finish(report, ok, out_path);
}

int cmd_grassmann(int k, int n, bool all_checks, const std::string& emit_what, const std::string& out_path) {
  GenericMatrixContext ctx(k, n);
  GrassmannFixture fx = build_fixture(ctx);
  if (emit_what == "gr") return finish(to_json(fx.gr_base), true, out_path);
  if (emit_what == "band") return finish(to_json(fx.band_base), true, out_path);
  if (emit_what == "fstar") return finish(to_json(fx.fstar), true, out_path);
  if (emit_what == "gstar") return finish(to_json(fx.gstar), true, out_path);
  if (!emit_what.empty() && emit_what != "fixture") {
    return finish({{"error", "unknown --emit value " + emit_what}}, false, "");
  }
  json j = to_json(fx);
  if (!all_checks) return finish(j, true, out_path);

  struct SuiteResult {
    json value;
    bool ok = false;
  };
  auto relations = [](const std::vector<RelationCheck>& checks) {
    SuiteResult r{json::array(), true};
    for (const auto& c : checks) {
      r.value.push_back({{"relation", c.text}, {"holds", c.holds}});
      r.ok = r.ok && c.holds;
    }
    return r;
  };
  auto counted = [](std::size_t passed, std::size_t total) {
    return SuiteResult{{{"passed", passed}, {"total", total}}, passed == total};
  };
  const std::size_t depth = 12;
  const std::vector<std::pair<std::string, std::function<SuiteResult()>>> suites = {
      {"gr_relations", [&] { return relations(gr_relation_checks(fx, depth)); }},
      {"band_relations", [&] { return relations(band_relation_checks(fx, depth)); }},
      {"fstar_quasi_homomorphism",
       [&] {
         bool v = verify_qh(fx.fstar, fx.gr_base, fx.band_base);
         return SuiteResult{v, v};
       }},
      {"gstar_quasi_inverse",
       [&] {
         bool v = quasi_inverse_check(fx.fstar, fx.gstar, fx.gr_base);
         return SuiteResult{v, v};
       }},
      {"band_minor_identities",
       [&] {
         std::size_t passed = 0, total = 0;
         for (const auto& in : flattoband_instances(ctx)) {
           ++total;
           passed += flattoband_check(ctx, in.a, in.s, in.j);
         }
         return counted(passed, total);
       }},
      {"tropical_plucker",
       [&] {
         std::size_t passed = 0, total = 0;
         for (const auto& in : short_plucker_instances(ctx)) {
           ++total;
           passed += tropical_c_check(ctx, in.s, in.i, in.j, in.k, in.l);
         }
         return counted(passed, total);
       }},
  };

  // Suites are independent; workers pull them by index and the report is
  // assembled in the fixed order above.
  std::vector<SuiteResult> results(suites.size());
  std::vector<std::exception_ptr> errors(suites.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suites.size(); i = next++) {
      try {
        results[i] = suites[i].second();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(thread_count(), suites.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  bool ok = true;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    j[suites[i].first] = results[i].value;
    ok = ok && results[i].ok;
  }
  j["all_passed"] = ok;
  return finish(j, ok, out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seed patterns, quasi-homomorphisms and their fixtures"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  std::string out_path;
  std::size_t max_depth = 8, max_nodes = 1000;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("-o,--out", out_path, "Write the main artifact to this file");
  app.add_option("--max-depth", max_depth, "Exploration depth limit")->check(CLI::PositiveNumber);
  app.add_option("--max-nodes", max_nodes, "Exploration node limit")->check(CLI::PositiveNumber);

  std::string seed_path, src_path, dst_path, map_path, inverse_path, a_path, b_path;
  std::vector<std::size_t> word;

  auto* mutate = app.add_subcommand("mutate", "Mutate a seed along a word");
  mutate->add_option("seed", seed_path, "Seed JSON")->required()->check(CLI::ExistingFile);
  mutate->add_option("--word", word, "Mutation directions");

  auto* explore_cmd = app.add_subcommand("explore", "Enumerate the exchange graph");
  explore_cmd->add_option("seed", seed_path, "Seed JSON")->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify-qh", "Check a monomial map between two seeds");
  verify->add_option("--map", map_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--src", src_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--dst", dst_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--inverse", inverse_path, "Candidate quasi-inverse map")->check(CLI::ExistingFile);

  auto* construct = app.add_subcommand("construct-qh", "Solve for a quasi-homomorphism");
  construct->add_option("--src", src_path)->required()->check(CLI::ExistingFile);
  construct->add_option("--dst", dst_path)->required()->check(CLI::ExistingFile);

  auto* gradings = app.add_subcommand("gradings", "Integer basis of the gradings of a seed");
  gradings->add_option("seed", seed_path)->required()->check(CLI::ExistingFile);

  auto* orbit = app.add_subcommand("orbit-eq", "Decide whether two seeds lie in one orbit");
  orbit->add_option("a", a_path)->required()->check(CLI::ExistingFile);
  orbit->add_option("b", b_path)->required()->check(CLI::ExistingFile);

  std::string demo, lam_path, comp_path, perm_path;
  auto* surface = app.add_subcommand("surface", "Lamination pairings and the lattice criterion");
  surface->add_option("--demo", demo, "Built-in fixture (annulus)");
  surface->add_option("--lamination", lam_path)->check(CLI::ExistingFile);
  surface->add_option("--components", comp_path)->check(CLI::ExistingFile);
  surface->add_option("--perm", perm_path, "Signed permutation matrix")->check(CLI::ExistingFile);

  std::vector<int> kn{2, 5};
  bool all_checks = false;
  std::string emit_what;
  auto* grass = app.add_subcommand("grassmann", "Grassmannian and band-matrix fixtures");
  grass->add_option("--kn", kn, "k and n")->expected(2);
  grass->add_flag("--all-checks", all_checks, "Run every identity suite");
  grass->add_option("--emit", emit_what, "fixture, gr, band, fstar or gstar");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mutate) return cmd_mutate(seed_path, word, out_path, format);
    if (*explore_cmd) return cmd_explore(seed_path, max_depth, max_nodes, format, out_path);
    if (*verify) return cmd_verify_qh(map_path, src_path, dst_path, inverse_path, out_path);
    if (*construct) return cmd_construct_qh(src_path, dst_path, out_path);
    if (*gradings) return cmd_gradings(seed_path, out_path);
    if (*orbit) return cmd_orbit_eq(a_path, b_path, out_path);
    if (*surface) return cmd_surface(demo, lam_path, comp_path, perm_path, out_path);
    if (*grass) return cmd_grassmann(kn[0], kn[1], all_checks, emit_what, out_path);
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    return 2;
  }
  return 1;
}
