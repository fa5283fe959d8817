#include "xeno/classify.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

namespace xeno {

std::string_view to_string(PairClass c, bool refined) {
  switch (c) {
    case PairClass::kEssential:
      return refined ? "r-essential" : "essential";
    case PairClass::kForbidden:
      return refined ? "r-forbidden" : "forbidden";
    case PairClass::kAmbiguous:
      return refined ? "r-ambiguous" : "ambiguous";
  }
  return "?";
}

namespace {

void check_pair(ClassId a, ClassId b, std::size_t count) {
  if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= count || static_cast<std::size_t>(b) >= count) {
    throw std::out_of_range("unknown class id");
  }
  if (a == b) throw std::invalid_argument("pair classification needs two distinct classes");
}

}  // namespace

PairClassifier::PairClassifier(const RootedTree& tree, const LeafPartition& p)
    : index_(tree), coloring_(vertex_coloring(tree, index_, p)) {
  if (!coloring_.compatible) throw IncompatibleError("tree and partition are not compatible");
  lcsa_.assign(tree.size(), kNoVertex);
  for (Vertex v : tree.preorder()) {
    const Vertex parent = tree.parent(v);
    if (parent == kNoVertex) continue;
    lcsa_[v] = coloring_.color[parent] != kNoClass ? parent : lcsa_[parent];
  }
}

PairClass PairClassifier::classify(ClassId a, ClassId b) const {
  check_pair(a, b, class_count());
  const Vertex lca_a = coloring_.class_lca[a];
  const Vertex lca_b = coloring_.class_lca[b];
  assert(lca_a != lca_b);
  const Vertex u = index_.lca_unchecked(lca_a, lca_b);
  // lca(A) strictly below lca(B).
  const bool forbidden = u == lca_b;
  // A colored vertex v with lca(B) < v <= u.
  const Vertex w = lcsa_[lca_b];
  const bool essential = w != kNoVertex && index_.lca_unchecked(w, u) == u;
  assert(!(forbidden && essential));
  if (forbidden) return PairClass::kForbidden;
  return essential ? PairClass::kEssential : PairClass::kAmbiguous;
}

RPairClassifier::RPairClassifier(const RootedTree& tree, const LeafPartition& p)
    : index_(tree), coloring_(edge_coloring(tree, index_, p)) {
  if (!coloring_.r_compatible) throw IncompatibleError("tree and partition are not r-compatible");
  lce_.assign(tree.size(), kNoVertex);
  for (Vertex v : tree.preorder()) {
    const Vertex parent = tree.parent(v);
    if (parent == kNoVertex) continue;
    lce_[v] = coloring_.color[v] != kNoClass ? v : lce_[parent];
  }
}

PairClass RPairClassifier::classify(ClassId a, ClassId b) const {
  check_pair(a, b, class_count());
  const auto& gamma = coloring_.color;
  const Vertex lca_a = coloring_.class_lca[a];
  const Vertex lca_b = coloring_.class_lca[b];
  const Vertex u = index_.lca_unchecked(lca_a, lca_b);

  // (a) a colored edge on the path from u down to lca(B).
  const Vertex low = lce_[lca_b];
  const bool colored_below_b = low != kNoVertex && low != u && index_.lca_unchecked(low, u) == u;
  // (b) the edge from u toward lca(A) continues the color of the edge above u.
  bool continues_above = false;
  if (u != index_.root() && lca_a != u && gamma[u] != kNoClass) {
    continues_above = gamma[index_.child_toward_unchecked(u, lca_a)] == gamma[u];
  }
  // (c) lca(A) strictly below lca(B) = u, separated from it by a B-colored edge.
  const bool forbidden =
      lca_a != u && lca_b == u && gamma[index_.child_toward_unchecked(u, lca_a)] == b;
  const bool essential = colored_below_b || continues_above;
  assert(!(forbidden && essential));
  if (essential) return PairClass::kEssential;
  return forbidden ? PairClass::kForbidden : PairClass::kAmbiguous;
}

PairClassifier build_pair_classifier(const RootedTree& tree, const LeafPartition& p) {
  return PairClassifier(tree, p);
}

RPairClassifier build_rpair_classifier(const RootedTree& tree, const LeafPartition& p) {
  return RPairClassifier(tree, p);
}

}  // namespace xeno
