#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xeno/partition.hpp"
#include "xeno/tree.hpp"

namespace xeno {

/// Groups `children` (a proper subset of the children of `target`, at least
/// two) under a new vertex.
struct RefinementStep {
  Vertex target = kNoVertex;
  std::vector<Vertex> children;
};

/// Classes A whose lca has a child edge colored by another class.
std::vector<ClassId> y_set(const RootedTree& tree, const LeafPartition& p, const EdgeColoring& gamma);

/// Inserts a new vertex below `step.target` that adopts `step.children`.
/// Existing vertices keep their indices; the new vertex gets index size().
/// It takes the place of the first moved child among the target's children.
/// Throws std::invalid_argument for a leaf target or an improper subset.
RootedTree basic_refinement_step(const RootedTree& tree, const RefinementStep& step,
                                 std::string label = {});

/// For each A in y_set, gathers the A-colored child edges of lca(A) under a
/// new vertex. The result refines `tree` and is compatible with `p`.
/// Throws IncompatibleError unless r-compatible.
RootedTree star_refinement(const RootedTree& tree, const LeafPartition& p);

/// A refinement step whose new cluster is uncolored (no class both meets it
/// and leaves it), or nullopt. Candidates at each vertex are unions of
/// child blocks: children sharing a class whose lca is that vertex form one
/// block, uncolored child edges are singleton blocks, and children whose edge
/// carries a class reaching above are excluded.
std::optional<RefinementStep> find_uncolored_step(const RootedTree& tree, const LeafPartition& p);

/// star_refinement followed by uncolored steps until none applies.
RootedTree urs_tree(const RootedTree& tree, const LeafPartition& p);

}  // namespace xeno
