#include "clusterqh/nerve.hpp"

#include <map>
#include <vector>

namespace cqh {

MutationWord tree_step(const MutationWord& w, std::size_t k) {
  MutationWord out = w;
  if (!out.empty() && out.back() == k) {
    out.pop_back();
  } else {
    out.push_back(k);
  }
  return out;
}

bool is_reduced(const MutationWord& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1]) return false;
  }
  return true;
}

TreeEdge make_tree_edge(const MutationWord& w, std::size_t k) {
  if (!is_reduced(w)) throw InvalidNerve("tree vertices must be reduced words");
  MutationWord v = tree_step(w, k);
  return v.size() < w.size() ? TreeEdge{v, k} : TreeEdge{w, k};
}

bool validate_nerve(const Nerve& nerve, std::size_t n) {
  if (nerve.edges.empty()) return false;
  std::vector<bool> label_seen(n, false);
  std::map<MutationWord, std::vector<MutationWord>> adj;
  for (const auto& e : nerve.edges) {
    if (e.label >= n || !is_reduced(e.vertex)) return false;
    for (auto letter : e.vertex) {
      if (letter >= n) return false;
    }
    label_seen[e.label] = true;
    MutationWord other = e.other();
    adj[e.vertex].push_back(other);
    adj[other].push_back(e.vertex);
  }
  for (bool seen : label_seen) {
    if (!seen) return false;
  }
  std::set<MutationWord> reached{adj.begin()->first};
  std::vector<MutationWord> stack{adj.begin()->first};
  while (!stack.empty()) {
    MutationWord v = stack.back();
    stack.pop_back();
    for (const auto& u : adj[v]) {
      if (reached.insert(u).second) stack.push_back(u);
    }
  }
  return reached.size() == adj.size();
}

}  // namespace cqh
