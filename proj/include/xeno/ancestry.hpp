#pragma once

#include <cstdint>
#include <vector>

#include "xeno/tree.hpp"

namespace xeno {

/// Constant-time ancestor queries over a fixed tree.
///
/// LCA uses an Euler tour with a sparse-table range minimum (O(n log n)
/// build). Level ancestor uses jump pointers combined with ladders built on a
/// long-path decomposition, so that LA(v, d) is one jump plus one ladder
/// lookup. All construction is iterative.
class AncestryIndex {
 public:
  explicit AncestryIndex(const RootedTree& tree);

  std::size_t size() const { return depth_.size(); }
  Vertex root() const { return root_; }
  std::int32_t depth(Vertex v) const { return depth_[v]; }
  Vertex parent(Vertex v) const { return parent_[v]; }

  /// Throws std::out_of_range for vertices outside the tree.
  Vertex lca(Vertex u, Vertex v) const;
  /// Ancestor of `v` at depth `d`. Throws std::out_of_range unless
  /// 0 <= d <= depth(v).
  Vertex level_ancestor(Vertex v, std::int32_t d) const;
  /// The child `w` of `u` with `v` below or equal to `w`. Throws
  /// std::invalid_argument unless `v` is a strict descendant of `u`.
  Vertex child_toward(Vertex u, Vertex v) const;

  /// u is an ancestor of v (or equal).
  bool is_ancestor(Vertex u, Vertex v) const { return tin_[u] <= tin_[v] && tout_[v] <= tout_[u]; }

  // Unchecked variants for hot loops.
  Vertex lca_unchecked(Vertex u, Vertex v) const {
    std::uint32_t l = first_[u];
    std::uint32_t r = first_[v];
    if (l > r) std::swap(l, r);
    const unsigned k = floor_log2(r - l + 1);
    const auto& row = table_[k];
    const std::uint64_t a = row[l];
    const std::uint64_t b = row[r - (1u << k) + 1];
    return static_cast<Vertex>((a < b ? a : b) & 0xffffffffu);
  }
  Vertex level_ancestor_unchecked(Vertex v, std::int32_t d) const;
  Vertex child_toward_unchecked(Vertex u, Vertex v) const {
    return level_ancestor_unchecked(v, depth_[u] + 1);
  }

 private:
  static unsigned floor_log2(std::uint32_t x) { return 31u - static_cast<unsigned>(__builtin_clz(x)); }
  void check(Vertex v) const;

  Vertex root_;
  std::vector<std::int32_t> depth_;
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> tin_;
  std::vector<std::uint32_t> tout_;

  // LCA: Euler tour entries packed as (depth << 32) | vertex.
  std::vector<std::uint32_t> first_;
  std::vector<std::vector<std::uint64_t>> table_;

  // Level ancestor.
  std::vector<std::vector<Vertex>> jump_;  // jump_[k][v] = 2^k-th ancestor or root
  std::vector<std::vector<Vertex>> ladders_;  // bottom-up, extended upward
  std::vector<std::uint32_t> ladder_of_;
  std::vector<std::uint32_t> ladder_pos_;
};

}  // namespace xeno
