#include "xeno/ancestry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace xeno {

AncestryIndex::AncestryIndex(const RootedTree& tree) : root_(tree.root()) {
  const auto n = tree.size();
  depth_.assign(n, 0);
  parent_.assign(n, kNoVertex);
  for (Vertex v : tree.preorder()) {
    parent_[v] = tree.parent(v);
    if (v != root_) depth_[v] = depth_[parent_[v]] + 1;
  }

  // Euler tour.
  std::vector<std::uint64_t> euler;
  euler.reserve(2 * n - 1);
  first_.assign(n, 0);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  auto pack = [&](Vertex v) {
    return (static_cast<std::uint64_t>(depth_[v]) << 32) | static_cast<std::uint32_t>(v);
  };
  std::vector<std::pair<Vertex, std::size_t>> stack{{root_, 0}};
  first_[root_] = 0;
  euler.push_back(pack(root_));
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    auto ch = tree.children(v);
    if (next < ch.size()) {
      const Vertex c = ch[next++];
      first_[c] = static_cast<std::uint32_t>(euler.size());
      euler.push_back(pack(c));
      stack.emplace_back(c, 0);
    } else {
      tout_[v] = static_cast<std::uint32_t>(euler.size() - 1);
      stack.pop_back();
      if (!stack.empty()) euler.push_back(pack(stack.back().first));
    }
  }
  tin_ = first_;

  const auto m = static_cast<std::uint32_t>(euler.size());
  table_.push_back(std::move(euler));
  for (unsigned k = 1; (1u << k) <= m; ++k) {
    const auto& prev = table_[k - 1];
    const std::uint32_t len = m - (1u << k) + 1;
    std::vector<std::uint64_t> row(len);
    const std::uint32_t half = 1u << (k - 1);
    for (std::uint32_t i = 0; i < len; ++i) row[i] = std::min(prev[i], prev[i + half]);
    table_.push_back(std::move(row));
  }

  // Heights and long-path (tallest child) decomposition.
  std::vector<std::int32_t> height(n, 0);
  std::vector<Vertex> tallest(n, kNoVertex);
  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    for (Vertex c : tree.children(v)) {
      if (tallest[v] == kNoVertex || height[c] > height[tallest[v]]) tallest[v] = c;
    }
    if (tallest[v] != kNoVertex) height[v] = height[tallest[v]] + 1;
  }
  ladder_of_.assign(n, 0);
  ladder_pos_.assign(n, 0);
  for (Vertex top : order) {
    if (top != root_ && tallest[parent_[top]] == top) continue;
    std::vector<Vertex> ladder;
    for (Vertex v = top; v != kNoVertex; v = tallest[v]) ladder.push_back(v);
    std::reverse(ladder.begin(), ladder.end());
    const auto id = static_cast<std::uint32_t>(ladders_.size());
    for (std::uint32_t i = 0; i < ladder.size(); ++i) {
      ladder_of_[ladder[i]] = id;
      ladder_pos_[ladder[i]] = i;
    }
    const auto path_len = ladder.size();
    for (Vertex v = parent_[top]; v != kNoVertex && ladder.size() < 2 * path_len; v = parent_[v]) {
      ladder.push_back(v);
    }
    ladders_.push_back(std::move(ladder));
  }

  // Jump pointers.
  jump_.push_back(parent_);
  jump_[0][root_] = root_;
  for (unsigned k = 1; (std::size_t{1} << k) < n; ++k) {
    const auto& prev = jump_[k - 1];
    std::vector<Vertex> row(n);
    for (std::size_t v = 0; v < n; ++v) row[v] = prev[prev[v]];
    jump_.push_back(std::move(row));
  }
}

void AncestryIndex::check(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= depth_.size()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  }
}

Vertex AncestryIndex::lca(Vertex u, Vertex v) const {
  check(u);
  check(v);
  return lca_unchecked(u, v);
}

Vertex AncestryIndex::level_ancestor_unchecked(Vertex v, std::int32_t d) const {
  const auto k = static_cast<std::uint32_t>(depth_[v] - d);
  if (k == 0) return v;
  const unsigned i = floor_log2(k);
  const Vertex w = jump_[i][v];
  const std::uint32_t rest = k - (1u << i);
  return ladders_[ladder_of_[w]][ladder_pos_[w] + rest];
}

Vertex AncestryIndex::level_ancestor(Vertex v, std::int32_t d) const {
  check(v);
  if (d < 0 || d > depth_[v]) {
    throw std::out_of_range("depth " + std::to_string(d) + " outside [0, " +
                            std::to_string(depth_[v]) + "]");
  }
  return level_ancestor_unchecked(v, d);
}

Vertex AncestryIndex::child_toward(Vertex u, Vertex v) const {
  check(u);
  check(v);
  if (u == v || !is_ancestor(u, v)) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " is not a strict descendant of " +
                                std::to_string(u));
  }
  return child_toward_unchecked(u, v);
}

}  // namespace xeno
