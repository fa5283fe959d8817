#pragma once

#include <random>
#include <string>
#include <vector>

#include "xeno/partition.hpp"
#include "xeno/separating.hpp"
#include "xeno/tree.hpp"

namespace xeno::test {

inline const char* const kTreeC = "(((b,b')Y,a)Z,a')R;";
inline const char* const kTreeQ = "((a,a')X,(b,b')Y)R;";
inline const char* const kTreeM = "((b,b')Y,a,a')R;";
inline const char* const kTreeP = "((a,a',b)U,b')R;";
inline const char* const kTreeX = "((a,b)X,(a',b')Y)R;";
inline const char* const kP2 = "A:\ta\ta'\nB:\tb\tb'\n";

inline LeafPartition bind(const RootedTree& t, const char* text) { return bind_partition(t, parse_partition(text)); }

inline Vertex at(const RootedTree& t, const char* id) { return t.resolve(id); }

inline SeparatingSet edges(const RootedTree& t, std::initializer_list<const char*> ids) {
  SeparatingSet h;
  for (const char* id : ids) h.edges.push_back(t.resolve(id));
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

/// Random phylogenetic tree: repeatedly merges 2..max_children pool members.
inline RootedTree random_tree(std::size_t leaves, std::mt19937_64& rng, std::size_t max_children = 2) {
  std::vector<RootedTree::Node> nodes(leaves);
  std::vector<Vertex> pool;
  for (std::size_t i = 0; i < leaves; ++i) {
    nodes[i].label = "l" + std::to_string(i);
    pool.push_back(static_cast<Vertex>(i));
  }
  while (pool.size() > 1) {
    const auto hi = std::min(max_children, pool.size());
    const auto k = std::uniform_int_distribution<std::size_t>(2, hi)(rng);
    const auto p = static_cast<Vertex>(nodes.size());
    nodes.emplace_back();
    for (std::size_t j = 0; j < k; ++j) {
      const auto i = std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng);
      const Vertex c = pool[i];
      pool[i] = pool.back();
      pool.pop_back();
      nodes[c].parent = p;
      nodes[p].children.push_back(c);
    }
    pool.push_back(p);
  }
  return RootedTree(std::move(nodes));
}

/// (((l0,l1),l2),...) with n leaves; depth n-1.
inline RootedTree caterpillar(std::size_t n) {
  std::vector<RootedTree::Node> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i].label = "l" + std::to_string(i);
  Vertex below = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const auto p = static_cast<Vertex>(nodes.size());
    nodes.emplace_back();
    nodes[p].children = {below, static_cast<Vertex>(i)};
    nodes[below].parent = p;
    nodes[i].parent = p;
    below = p;
  }
  return RootedTree(std::move(nodes));
}

/// Each edge independently with probability q.
inline SeparatingSet random_edges(const RootedTree& t, double q, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(q);
  SeparatingSet h;
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    if (v != t.root() && coin(rng)) h.edges.push_back(v);
  }
  return h;
}

inline Vertex naive_lca(const RootedTree& t, Vertex a, Vertex b) {
  std::vector<char> up(t.size(), 0);
  for (Vertex v = a; v != kNoVertex; v = t.parent(v)) up[v] = 1;
  for (Vertex v = b;; v = t.parent(v)) {
    if (up[v]) return v;
  }
}

inline int naive_depth(const RootedTree& t, Vertex v) {
  int d = 0;
  for (; t.parent(v) != kNoVertex; v = t.parent(v)) ++d;
  return d;
}

}  // namespace xeno::test
