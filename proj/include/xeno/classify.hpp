#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "xeno/ancestry.hpp"
#include "xeno/partition.hpp"
#include "xeno/separating.hpp"

namespace xeno {

enum class PairClass { kEssential, kForbidden, kAmbiguous };

/// "essential", "forbidden", "ambiguous"; with `refined`, prefixed "r-".
std::string_view to_string(PairClass c, bool refined = false);

/// O(1) classification of ordered class pairs (A, B) for a compatible tree
/// and partition: is the arc (A, B) present in the Fitch quotient graph for
/// every, no, or only some separating sets?
class PairClassifier {
 public:
  /// Throws IncompatibleError unless the pair is compatible.
  PairClassifier(const RootedTree& tree, const LeafPartition& p);

  PairClass classify(ClassId a, ClassId b) const;
  std::size_t class_count() const { return coloring_.class_lca.size(); }

  const AncestryIndex& index() const { return index_; }
  const VertexColoring& coloring() const { return coloring_; }
  /// Lowest colored strict ancestor of v, or kNoVertex.
  Vertex lcsa(Vertex v) const { return lcsa_[v]; }

 private:
  AncestryIndex index_;
  VertexColoring coloring_;
  std::vector<Vertex> lcsa_;
};

/// The same question quantified over every refinement of the tree that is
/// compatible with the partition. Requires only r-compatibility.
class RPairClassifier {
 public:
  /// Throws IncompatibleError unless the pair is r-compatible.
  RPairClassifier(const RootedTree& tree, const LeafPartition& p);

  PairClass classify(ClassId a, ClassId b) const;
  std::size_t class_count() const { return coloring_.class_lca.size(); }

  const AncestryIndex& index() const { return index_; }
  const EdgeColoring& coloring() const { return coloring_; }
  /// Child endpoint of the lowest colored edge on the root path of v, or
  /// kNoVertex.
  Vertex lce(Vertex v) const { return lce_[v]; }

 private:
  AncestryIndex index_;
  EdgeColoring coloring_;
  std::vector<Vertex> lce_;
};

PairClassifier build_pair_classifier(const RootedTree& tree, const LeafPartition& p);
RPairClassifier build_rpair_classifier(const RootedTree& tree, const LeafPartition& p);

/// All ordered pairs; entry [a][b], diagonal unused.
template <typename Classifier>
std::vector<std::vector<PairClass>> classify_all(const Classifier& c) {
  const auto k = c.class_count();
  std::vector<std::vector<PairClass>> out(k, std::vector<PairClass>(k, PairClass::kForbidden));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b) out[a][b] = c.classify(static_cast<ClassId>(a), static_cast<ClassId>(b));
    }
  }
  return out;
}

}  // namespace xeno
