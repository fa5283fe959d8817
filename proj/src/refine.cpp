#include "xeno/refine.hpp"

#include <algorithm>
#include <stdexcept>

#include "xeno/separating.hpp"

namespace xeno {

std::vector<ClassId> y_set(const RootedTree& tree, const LeafPartition& p, const EdgeColoring& gamma) {
  if (!gamma.r_compatible) throw IncompatibleError("tree and partition are not r-compatible");
  std::vector<ClassId> out;
  for (std::size_t a = 0; a < p.size(); ++a) {
    const Vertex u = gamma.class_lca[a];
    for (Vertex v : tree.children(u)) {
      const ClassId c = gamma.color[v];
      if (c != kNoClass && c != static_cast<ClassId>(a)) {
        out.push_back(static_cast<ClassId>(a));
        break;
      }
    }
  }
  return out;
}

RootedTree basic_refinement_step(const RootedTree& tree, const RefinementStep& step, std::string label) {
  const Vertex u = step.target;
  if (!tree.contains(u) || tree.is_leaf(u)) throw std::invalid_argument("refinement target must be an inner vertex");
  const auto ch = tree.children(u);
  std::vector<char> moved(tree.size(), 0);
  for (Vertex v : step.children) {
    if (std::find(ch.begin(), ch.end(), v) == ch.end()) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " is not a child of the target");
    }
    if (moved[v]) throw std::invalid_argument("repeated child in refinement step");
    moved[v] = 1;
  }
  if (step.children.size() < 2 || step.children.size() >= ch.size()) {
    throw std::invalid_argument("refinement step needs a proper subset of at least two children");
  }

  std::vector<RootedTree::Node> nodes = tree.nodes();
  const auto w = static_cast<Vertex>(nodes.size());
  RootedTree::Node fresh;
  fresh.parent = u;
  fresh.label = std::move(label);
  std::vector<Vertex> kept;
  bool placed = false;
  for (Vertex v : ch) {
    if (moved[v]) {
      fresh.children.push_back(v);
      nodes[v].parent = w;
      if (!placed) {
        kept.push_back(w);
        placed = true;
      }
    } else {
      kept.push_back(v);
    }
  }
  nodes[u].children = std::move(kept);
  nodes.push_back(std::move(fresh));
  return RootedTree(std::move(nodes));
}

namespace {

LeafPartition widen(LeafPartition p, std::size_t n) {
  p.class_of.resize(n, kNoClass);
  return p;
}

}  // namespace

RootedTree star_refinement(const RootedTree& tree, const LeafPartition& p) {
  const auto gamma = edge_coloring(tree, p);
  RootedTree out = tree;
  for (ClassId a : y_set(tree, p, gamma)) {
    RefinementStep step{gamma.class_lca[a], {}};
    for (Vertex v : tree.children(step.target)) {
      if (gamma.color[v] == a) step.children.push_back(v);
    }
    out = basic_refinement_step(out, step);
  }
  return out;
}

std::optional<RefinementStep> find_uncolored_step(const RootedTree& tree, const LeafPartition& p) {
  const auto gamma = edge_coloring(tree, widen(p, tree.size()));
  if (!gamma.r_compatible) throw IncompatibleError("tree and partition are not r-compatible");
  for (Vertex u : tree.preorder()) {
    const auto ch = tree.children(u);
    if (ch.size() < 3) continue;
    // Blocks in order of their first child.
    std::vector<std::vector<Vertex>> blocks;
    std::vector<std::pair<ClassId, std::size_t>> block_of_class;
    for (Vertex v : ch) {
      const ClassId c = gamma.color[v];
      if (c == kNoClass) {
        blocks.push_back({v});
        continue;
      }
      if (gamma.class_lca[c] != u) continue;
      auto it = std::find_if(block_of_class.begin(), block_of_class.end(),
                             [&](const auto& e) { return e.first == c; });
      if (it == block_of_class.end()) {
        block_of_class.emplace_back(c, blocks.size());
        blocks.push_back({v});
      } else {
        blocks[it->second].push_back(v);
      }
    }
    for (const auto& b : blocks) {
      if (b.size() >= 2 && b.size() < ch.size()) return RefinementStep{u, b};
    }
    if (blocks.size() >= 2 && blocks[0].size() + blocks[1].size() < ch.size()) {
      RefinementStep step{u, blocks[0]};
      step.children.insert(step.children.end(), blocks[1].begin(), blocks[1].end());
      return step;
    }
  }
  return std::nullopt;
}

RootedTree urs_tree(const RootedTree& tree, const LeafPartition& p) {
  RootedTree out = star_refinement(tree, p);
  while (auto step = find_uncolored_step(out, p)) out = basic_refinement_step(out, *step);
  return out;
}

}  // namespace xeno
