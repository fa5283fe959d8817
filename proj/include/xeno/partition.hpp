#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xeno/ancestry.hpp"
#include "xeno/tree.hpp"

namespace xeno {

using ClassId = std::int32_t;
inline constexpr ClassId kNoClass = -1;

/// A partition of leaf labels, as read from or written to text.
struct Partition {
  std::vector<std::vector<std::string>> classes;
  /// Optional display names, parallel to `classes`; empty means "use the id".
  std::vector<std::string> names;

  std::string name(ClassId id) const;
};

/// One class per line, labels separated by tabs (or spaces). Blank lines and
/// lines starting with '#' are ignored. A first field of the form `NAME:`
/// names the class. Class ids are the 0-based order of class lines.
Partition parse_partition(std::string_view text);
std::string write_partition(const Partition& p);
/// Same family of label sets, regardless of order.
bool equivalent(const Partition& a, const Partition& b);

struct PartitionViolation {
  enum class Axiom { kEmptyClass, kNotCovering, kNotDisjoint };
  Axiom axiom;
  std::string message;
};

/// Checks (P0) no empty class, (P2) disjointness, then (P1) coverage of the
/// tree's leaves; reports the first violation found in that order.
std::optional<PartitionViolation> validate_partition(const Partition& p, const RootedTree& tree);

/// A partition bound to the leaves of a particular tree.
struct LeafPartition {
  std::vector<std::vector<Vertex>> classes;
  std::vector<ClassId> class_of;  // indexed by vertex; kNoClass for inner vertices

  std::size_t size() const { return classes.size(); }
};

/// Throws InputError describing the violated axiom.
LeafPartition bind_partition(const RootedTree& tree, const Partition& p);
Partition to_labels(const RootedTree& tree, const LeafPartition& p, const std::vector<std::string>& names = {});
/// Same blocks (class ids may differ). Both must be over the same tree.
bool same_partition(const LeafPartition& a, const LeafPartition& b);
/// Carries class ids over to another tree with the same leaf labels.
LeafPartition rebind(const LeafPartition& p, const RootedTree& from, const RootedTree& to);

/// The vertex coloring: color[v] = A iff v lies on a path between two
/// (possibly equal) leaves of A.
struct VertexColoring {
  std::vector<ClassId> color;
  std::vector<Vertex> class_lca;
  bool compatible = false;
};

/// Colors the minimal subtree spanning each class by walking up from each
/// leaf toward the running class LCA. A vertex claimed by two classes makes
/// the pair incompatible; `color` is then only partially filled, while
/// `class_lca` is still complete.
VertexColoring vertex_coloring(const RootedTree& tree, const AncestryIndex& index, const LeafPartition& p);
VertexColoring vertex_coloring(const RootedTree& tree, const LeafPartition& p);

/// The edge coloring, keyed by child vertex (the root slot is kNoClass).
struct EdgeColoring {
  std::vector<ClassId> color;
  std::vector<Vertex> class_lca;
  bool r_compatible = false;
};

EdgeColoring edge_coloring(const RootedTree& tree, const AncestryIndex& index, const LeafPartition& p);
EdgeColoring edge_coloring(const RootedTree& tree, const LeafPartition& p);

}  // namespace xeno
