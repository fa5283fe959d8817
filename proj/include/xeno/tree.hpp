#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace xeno {

using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

/// Malformed or semantically invalid user input (Newick, partition files,
/// edge lists). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Rooted phylogenetic tree with uniquely labeled leaves.
///
/// Vertices are dense indices. Every inner vertex has at least two children;
/// the tree is immutable once constructed. Edges are identified by their
/// child vertex throughout the library.
class RootedTree {
 public:
  struct Node {
    Vertex parent = kNoVertex;
    std::vector<Vertex> children;
    std::string label;
  };

  /// Validates the node table (single root, parent/child consistency,
  /// acyclic, no single-child vertices, unique nonempty leaf labels).
  explicit RootedTree(std::vector<Node> nodes);

  std::size_t size() const { return nodes_.size(); }
  Vertex root() const { return root_; }
  Vertex parent(Vertex v) const { return nodes_[v].parent; }
  std::span<const Vertex> children(Vertex v) const { return nodes_[v].children; }
  const std::string& label(Vertex v) const { return nodes_[v].label; }
  bool is_leaf(Vertex v) const { return nodes_[v].children.empty(); }
  bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < nodes_.size(); }

  /// Leaves in preorder.
  const std::vector<Vertex>& leaves() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  /// Vertices in preorder (parents before children, children in stored order).
  const std::vector<Vertex>& preorder() const { return preorder_; }
  /// Position of `v` in preorder; used for `@k` addressing of unlabeled vertices.
  std::size_t preorder_index(Vertex v) const { return preorder_index_[v]; }

  std::optional<Vertex> find_leaf(std::string_view label) const;
  const std::vector<Node>& nodes() const { return nodes_; }

  /// Resolves an edge identifier: a leaf label, a unique inner label, or
  /// `@<preorder-index>`. Throws InputError when it names no vertex or is
  /// ambiguous.
  Vertex resolve(std::string_view id) const;
  /// Inverse of resolve(): the label when it identifies `v` uniquely, `@k`
  /// otherwise.
  std::string vertex_id(Vertex v) const;

  /// Same shape and labels, including child order.
  friend bool operator==(const RootedTree& a, const RootedTree& b);

 private:
  std::vector<Node> nodes_;
  Vertex root_ = kNoVertex;
  std::vector<Vertex> leaves_;
  std::vector<Vertex> preorder_;
  std::vector<std::size_t> preorder_index_;
  std::unordered_map<std::string, Vertex> leaf_by_label_;
};

RootedTree parse_newick(std::string_view text);
std::string write_newick(const RootedTree& tree);

using Cluster = std::set<std::string>;

/// {L(T(v)) : v in V(T)}, as label sets.
std::set<Cluster> clusters(const RootedTree& tree);

/// True iff every cluster of `base` is a cluster of `candidate`. Throws
/// InputError if the leaf label sets differ.
bool is_refinement(const RootedTree& candidate, const RootedTree& base);

/// Contracts the listed inner edges (keyed by child vertex). The children of
/// a contracted vertex take its place, in order, among its parent's
/// children. Surviving vertices keep their relative index order. Throws
/// InputError for leaf edges and for the root.
RootedTree contract_edges(const RootedTree& tree, std::span<const Vertex> edges);

}  // namespace xeno
