#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "clusterqh/seeds.hpp"

namespace cqh {

// Vertices of the labeled n-regular tree are reduced mutation words (no letter
// repeated twice in a row); the root is the empty word.
MutationWord tree_step(const MutationWord& w, std::size_t k);
bool is_reduced(const MutationWord& w);

// An edge of the labeled tree, stored at the endpoint whose word is shorter.
struct TreeEdge {
  MutationWord vertex;
  std::size_t label = 0;

  MutationWord other() const { return tree_step(vertex, label); }
  bool operator<(const TreeEdge& o) const {
    return std::tie(vertex, label) < std::tie(o.vertex, o.label);
  }
  bool operator==(const TreeEdge& o) const { return vertex == o.vertex && label == o.label; }
};

// Builds the edge between vertex w and its k-neighbor in normalized form.
TreeEdge make_tree_edge(const MutationWord& w, std::size_t k);

struct Nerve {
  std::set<TreeEdge> edges;
};

bool validate_nerve(const Nerve& nerve, std::size_t n);

class InvalidNerve : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cqh
