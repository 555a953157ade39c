#include "clusterqh/patterns.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "clusterqh/orbits.hpp"

namespace cqh {

std::vector<Permutation> all_permutations(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Seed permute_seed(const Seed& seed, const Permutation& perm) {
  const std::size_t n = seed.n();
  if (perm.size() != n) throw SeedError("permutation size differs from rank");
  IntMatrix e = zero_matrix(n + seed.m(), n);
  for (std::size_t i = 0; i < n + seed.m(); ++i) {
    std::size_t src_row = i < n ? perm[i] : i;
    for (std::size_t j = 0; j < n; ++j) e[i][j] = seed.btilde(src_row, perm[j]);
  }
  Seed out = seed;
  out.btilde = ExtMatrix(n, seed.m(), std::move(e));
  for (std::size_t i = 0; i < n; ++i) out.cluster[i] = seed.cluster[perm[i]];
  return out;
}

namespace {

std::string labeled_key(const Seed& s) {
  std::ostringstream out;
  for (const auto& x : s.cluster) out << x.to_string() << ";";
  out << "|";
  for (const auto& row : s.btilde.entries()) {
    for (long v : row) out << v << ",";
    out << "/";
  }
  return out.str();
}

}  // namespace

std::string canonical_key(const Seed& seed) {
  const std::size_t n = seed.n();
  std::vector<std::string> keys;
  for (const auto& x : seed.cluster) keys.push_back(x.to_string());
  Permutation order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
  bool distinct = true;
  for (std::size_t i = 1; i < n; ++i) {
    if (keys[order[i]] == keys[order[i - 1]]) distinct = false;
  }
  if (distinct) return labeled_key(permute_seed(seed, order));
  if (n > 8) throw SeedError("canonical form by permutation search is limited to rank 8");
  std::string best;
  bool first = true;
  for (const auto& p : all_permutations(n)) {
    std::string k = labeled_key(permute_seed(seed, p));
    if (first || k < best) best = k;
    first = false;
  }
  return best;
}

bool GraphNode::complete() const {
  return std::all_of(neighbors.begin(), neighbors.end(), [](const auto& x) { return x.has_value(); });
}

bool ExplorationGraph::complete() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const auto& v) { return v.complete(); });
}

std::optional<std::size_t> ExplorationGraph::find(const Seed& seed) const {
  auto it = index.find(canonical_key(seed));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

ExplorationGraph explore(const Seed& initial, std::size_t max_depth, std::size_t max_nodes) {
  ExplorationGraph g;
  const std::size_t n = initial.n();
  auto add_node = [&](const Seed& s, MutationWord word, std::size_t depth, const std::string& key) {
    GraphNode node;
    node.seed = s;
    node.word = std::move(word);
    node.depth = depth;
    for (const auto& x : s.cluster) {
      node.normalized_cluster.push_back(x * embed_frozen(frozen_content(x, n).inverse(), n));
    }
    node.neighbors.assign(n, std::nullopt);
    g.index.emplace(key, g.nodes.size());
    g.nodes.push_back(std::move(node));
    return g.nodes.size() - 1;
  };
  if (max_nodes == 0) {
    g.truncated_nodes = true;
    return g;
  }
  add_node(initial, {}, 0, canonical_key(initial));
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < n; ++k) {
      Seed next = mutate_seed(g.nodes[u].seed, k);
      std::string key = canonical_key(next);
      auto it = g.index.find(key);
      std::size_t v;
      if (it != g.index.end()) {
        v = it->second;
      } else if (g.nodes[u].depth + 1 > max_depth) {
        g.truncated_depth = true;
        continue;
      } else if (g.nodes.size() >= max_nodes) {
        g.truncated_nodes = true;
        continue;
      } else {
        MutationWord w = g.nodes[u].word;
        w.push_back(k);
        v = add_node(next, std::move(w), g.nodes[u].depth + 1, key);
        queue.push_back(v);
      }
      g.nodes[u].neighbors[k] = v;
      if (u < v) g.edges.push_back({u, v, k});
    }
  }
  return g;
}

bool is_single_cycle(const ExplorationGraph& g) {
  if (g.nodes.size() < 3 || !g.complete() || g.edges.size() != g.nodes.size()) return false;
  std::vector<std::set<std::size_t>> adj(g.nodes.size());
  for (const auto& e : g.edges) {
    adj[e.from].insert(e.to);
    adj[e.to].insert(e.from);
  }
  for (const auto& a : adj) {
    if (a.size() != 2) return false;
  }
  std::size_t prev = 0, cur = *adj[0].begin(), steps = 1;
  while (cur != 0) {
    std::size_t nxt = *adj[cur].begin() == prev ? *adj[cur].rbegin() : *adj[cur].begin();
    prev = cur;
    cur = nxt;
    ++steps;
    if (steps > g.nodes.size()) return false;
  }
  return steps == g.nodes.size();
}

Nerve star_neighborhood(const ExplorationGraph& graph, std::size_t node) {
  const GraphNode& v = graph.nodes.at(node);
  if (!v.complete()) throw std::runtime_error("node has unexplored neighbors");
  Nerve nerve;
  for (std::size_t k = 0; k < v.neighbors.size(); ++k) nerve.edges.insert(make_tree_edge(v.word, k));
  return nerve;
}

std::vector<QuasiAutomorphism> find_quasi_automorphisms(const ExplorationGraph& graph, const Seed& base) {
  std::vector<QuasiAutomorphism> found;
  const IntMatrix principal = base.btilde.principal();
  const auto perms = all_permutations(base.n());
  for (std::size_t v = 0; v < graph.nodes.size(); ++v) {
    for (const auto& p : perms) {
      Seed target = permute_seed(graph.nodes[v].seed, p);
      if (target.btilde.principal() != principal) continue;
      auto M = construct_qh(base.btilde, target.btilde);
      if (!M) continue;
      // Maps into the node's own labeling, so that maps to the same node compare directly.
      MonomialMap unpermuted = *M;
      for (std::size_t i = 0; i < base.n(); ++i) unpermuted.matrix[p[i]] = M->matrix[i];
      bool duplicate = false;
      for (const auto& q : found) {
        if (q.node != v) continue;
        MonomialMap other = q.map;
        for (std::size_t i = 0; i < base.n(); ++i) other.matrix[q.perm[i]] = q.map.matrix[i];
        if (proportional(unpermuted, other, base.btilde)) duplicate = true;
      }
      if (!duplicate) found.push_back({v, p, *M});
    }
  }
  return found;
}

std::vector<std::optional<std::size_t>> induced_node_map(const ExplorationGraph& graph,
                                                         const QuasiAutomorphism& qa) {
  Seed root = permute_seed(graph.nodes.at(qa.node).seed, qa.perm);
  std::vector<std::optional<std::size_t>> out;
  for (const auto& v : graph.nodes) out.push_back(graph.find(mutate_along(root, v.word)));
  return out;
}

std::string to_dot(const ExplorationGraph& g) {
  std::ostringstream out;
  out << "graph exchange {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out << "  n" << i << " [label=\"";
    const auto& s = g.nodes[i].seed;
    for (std::size_t j = 0; j < s.cluster.size(); ++j) {
      if (j) out << "\\n";
      out << s.cluster[j].to_string(s.var_names);
    }
    out << "\"];\n";
  }
  for (const auto& e : g.edges) out << "  n" << e.from << " -- n" << e.to << " [label=\"" << e.label << "\"];\n";
  out << "}\n";
  return out.str();
}

nlohmann::json to_json(const ExplorationGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& v = g.nodes[i];
    nlohmann::json cluster = nlohmann::json::array(), normalized = nlohmann::json::array();
    for (const auto& x : v.seed.cluster) cluster.push_back(x.to_string(v.seed.var_names));
    for (const auto& x : v.normalized_cluster) normalized.push_back(x.to_string(v.seed.var_names));
    nlohmann::json nb = nlohmann::json::array();
    for (const auto& x : v.neighbors) {
      if (x) {
        nb.push_back(*x);
      } else {
        nb.push_back(nullptr);
      }
    }
    nodes.push_back({{"id", i}, {"word", v.word}, {"cluster", cluster},
                     {"normalized_cluster", normalized}, {"neighbors", nb}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
  return {{"nodes", nodes},
          {"edges", edges},
          {"complete", g.complete()},
          {"truncated_depth", g.truncated_depth},
          {"truncated_nodes", g.truncated_nodes}};
}

}  // namespace cqh
