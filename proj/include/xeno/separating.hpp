#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xeno/partition.hpp"
#include "xeno/tree.hpp"

namespace xeno {

/// Thrown when an operation that requires a compatible (or r-compatible)
/// tree/partition pair receives one that is not. The CLI maps this to exit
/// code 1.
class IncompatibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set of tree edges, each identified by its child vertex. Kept sorted.
struct SeparatingSet {
  std::vector<Vertex> edges;

  bool contains(Vertex child) const;
  /// Dense membership mask over `n` vertices.
  std::vector<char> mask(std::size_t n) const;
  static SeparatingSet from_mask(std::span<const char> mask);
  friend bool operator==(const SeparatingSet&, const SeparatingSet&) = default;
};

enum class EdgeClass { kEssential, kForbidden, kAmbiguous };
std::string_view to_string(EdgeClass c);

/// H* = { edges whose endpoints are not both colored with the same class }.
SeparatingSet maximal_separating_set(const RootedTree& tree, const VertexColoring& coloring);

/// Partition of the leaves by connected component of T - H.
LeafPartition induced_partition(const RootedTree& tree, const SeparatingSet& h);
bool is_separating(const RootedTree& tree, const LeafPartition& p, const SeparatingSet& h);

/// Essential iff both endpoints are colored with different classes,
/// forbidden iff both carry the same class, ambiguous otherwise. Indexed by
/// child vertex; the root slot holds kForbidden and is not an edge.
std::vector<EdgeClass> classify_tree_edges(const RootedTree& tree, const VertexColoring& coloring);

/// A block of H* whose edges are connected through uncolored vertices.
struct HStarComponent {
  std::vector<Vertex> edges;     // child keys, sorted
  std::vector<Vertex> vertices;  // vertices incident with some edge, preorder
  Vertex top = kNoVertex;        // the highest vertex of the component
  /// The top is the uncolored root of the tree; a leaf-to-top path then need
  /// not be cut.
  bool planted = false;
  std::vector<Vertex> leaves;    // colored vertices other than a colored top
};

std::vector<HStarComponent> hstar_components(const RootedTree& tree, const VertexColoring& coloring,
                                             const SeparatingSet& hstar);

/// Whether `h` cuts every path inside the component between two of its
/// leaves, and between a leaf and a colored top.
bool separates_component(const RootedTree& tree, const HStarComponent& component, const SeparatingSet& h);

/// H-set file: one child-vertex identifier per line (see RootedTree::resolve).
SeparatingSet parse_separating_set(const RootedTree& tree, std::string_view text);
std::string write_separating_set(const RootedTree& tree, const SeparatingSet& h);

}  // namespace xeno
