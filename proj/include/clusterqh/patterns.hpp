#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clusterqh/nerve.hpp"
#include "clusterqh/quasihom.hpp"
#include "clusterqh/seeds.hpp"

namespace cqh {

using Permutation = std::vector<std::size_t>;

// Relabels a seed so that position i of the result holds position perm[i] of the input.
Seed permute_seed(const Seed& seed, const Permutation& perm);

// Canonical key of the unlabeled seed: minimal labeling over all permutations.
std::string canonical_key(const Seed& seed);

struct GraphNode {
  Seed seed;                                   // labeled as first reached
  MutationWord word;                           // provenance from the root
  std::size_t depth = 0;
  std::vector<LaurentPoly> normalized_cluster; // frozen content divided out
  std::vector<std::optional<std::size_t>> neighbors;  // per direction in this node's labeling
  bool complete() const;
};

struct GraphEdge {
  std::size_t from;
  std::size_t to;
  std::size_t label;  // direction at `from`
};

struct ExplorationGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;  // one entry per unordered pair and label
  std::map<std::string, std::size_t> index;
  bool truncated_depth = false;
  bool truncated_nodes = false;

  bool complete() const;
  std::optional<std::size_t> find(const Seed& seed) const;
};

ExplorationGraph explore(const Seed& initial, std::size_t max_depth, std::size_t max_nodes);

// Whether the finite exchange graph is a single cycle through every node.
bool is_single_cycle(const ExplorationGraph& g);

// Throws std::runtime_error if the node does not have all n neighbors.
Nerve star_neighborhood(const ExplorationGraph& graph, std::size_t node);

struct QuasiAutomorphism {
  std::size_t node;
  Permutation perm;
  MonomialMap map;  // into the formal ambient of the relabeled target seed
};

std::vector<QuasiAutomorphism> find_quasi_automorphisms(const ExplorationGraph& graph, const Seed& base);

// Node map induced on the explored graph by sending the root to `qa.node` with
// labels permuted; absent where an image leaves the explored part.
std::vector<std::optional<std::size_t>> induced_node_map(const ExplorationGraph& graph,
                                                         const QuasiAutomorphism& qa);

std::string to_dot(const ExplorationGraph& g);
nlohmann::json to_json(const ExplorationGraph& g);

std::vector<Permutation> all_permutations(std::size_t n);

}  // namespace cqh
