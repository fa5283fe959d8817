#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xeno/ancestry.hpp"
#include "xeno/partition.hpp"
#include "xeno/separating.hpp"

namespace xeno {

/// Dense adjacency over `labels`; used for both directed and undirected graphs.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has(std::size_t from, std::size_t to) const { return adj_[from * size() + to] != 0; }
  void set(std::size_t from, std::size_t to) { adj_[from * size() + to] = 1; }
  std::size_t index_of(std::string_view label) const;
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<char> adj_;
};

/// Directed Fitch graph on the leaves: arc (x, y) iff the path from
/// lca(x, y) down to y contains an edge of H. Vertices follow tree.leaves().
struct FitchGraph {
  LabeledGraph arcs;
};

/// Symmetric adjacency: has(x, y) == has(y, x).
struct UndirectedGraph {
  LabeledGraph edges;
};

/// Arc presence between classes.
struct QuotientGraph {
  std::size_t classes = 0;
  std::vector<char> adj;
  bool has_arc(ClassId a, ClassId b) const { return adj[static_cast<std::size_t>(a) * classes + b] != 0; }
};

/// Per leaf y, the highest ancestor reachable without crossing H; an arc
/// (x, y) exists iff lca(x, y) lies strictly above it.
FitchGraph fitch_graph(const RootedTree& tree, const AncestryIndex& index, const SeparatingSet& h);
FitchGraph fitch_graph(const RootedTree& tree, const SeparatingSet& h);
/// Reference implementation scanning each path explicitly.
FitchGraph fitch_graph_naive(const RootedTree& tree, const SeparatingSet& h);

UndirectedGraph symmetrize(const FitchGraph& f);

/// Collapses `f` onto the classes of `p`; one representative per class
/// decides each arc. When `checked`, every leaf pair must agree with its class
/// pair, else InputError.
QuotientGraph quotient(const FitchGraph& f, const Partition& p, bool checked = true);

class NotMultipartiteError : public InputError {
 public:
  NotMultipartiteError(std::array<std::string, 3> witness);
  /// x, y, z with x !~ y, y !~ z and x ~ z.
  const std::array<std::string, 3>& witness() const { return witness_; }

 private:
  std::array<std::string, 3> witness_;
};

/// Parts of a complete multipartite graph (classes of non-adjacency).
/// Throws NotMultipartiteError with a witness triple otherwise.
Partition partition_from_graph(const UndirectedGraph& g);

/// Edge list: one `u<TAB>v` per line; a line with a single label declares an
/// isolated vertex. Blank lines and '#' comments are ignored.
UndirectedGraph parse_edge_list(std::string_view text);

std::string to_json(const FitchGraph& f);
std::string to_dot(const FitchGraph& f);

}  // namespace xeno
