#pragma once

// Brute-force reference implementations. Everything here works from the
// definitions (leaf paths, edge subsets, explicit refinements) and shares no
// code with the fast classifiers beyond the tree type.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "xeno/classify.hpp"
#include "xeno/partition.hpp"
#include "xeno/separating.hpp"
#include "xeno/tree.hpp"

namespace xeno::oracle {

struct OracleBudget {
  std::size_t max_leaves = 8;
  std::size_t max_degree = 4;
  std::size_t max_refinements = 100000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Edges not on any path between two leaves of the same class.
SeparatingSet hstar(const RootedTree& tree, const LeafPartition& p);

/// Every H with partTH(tree, H) = p, in increasing order of the edge bitmask.
/// Throws BudgetExceeded when the tree has more than 2 * max_leaves edges.
std::vector<SeparatingSet> enumerate_separating_sets(const RootedTree& tree, const LeafPartition& p,
                                                     const OracleBudget& budget = {});

/// Indexed by child vertex; the root slot holds kForbidden.
/// Throws IncompatibleError when no separating set exists.
std::vector<EdgeClass> oracle_edge_classes(const RootedTree& tree, const LeafPartition& p,
                                           const OracleBudget& budget = {});

/// Ordered class pairs, [a][b]; the diagonal is unused. Throws
/// std::logic_error if some Fitch graph disagrees with its own quotient.
std::vector<std::vector<PairClass>> oracle_pair_classes(const RootedTree& tree, const LeafPartition& p,
                                                        const OracleBudget& budget = {});

/// Every refinement of `tree` (including itself) compatible with `p`.
/// Vertices of `tree` keep their indices in each result.
std::vector<RootedTree> enumerate_compatible_refinements(const RootedTree& tree, const LeafPartition& p,
                                                         const OracleBudget& budget = {});

/// Throws IncompatibleError when no refinement is compatible.
std::vector<std::vector<PairClass>> oracle_rpair_classes(const RootedTree& tree, const LeafPartition& p,
                                                         const OracleBudget& budget = {});

/// Compatibility through the closure conditions: every cl(A) is a union of
/// classes, and cl is injective on classes.
bool compatible_by_closure(const RootedTree& tree, const LeafPartition& p);

/// Tries every proper child subset of size >= 2 at every vertex.
bool admits_uncolored_step(const RootedTree& tree, const LeafPartition& p);

/// All rooted trees with no degree-2 vertices whose leaves are the items
/// 0..k-1. parent[v] per node; nodes 0..k-1 are the items, the root has
/// parent -1. Includes the star.
std::vector<std::vector<int>> rooted_trees_on(std::size_t k);

/// One tree per unlabeled shape with n leaves, leaves named x0, x1, ... in
/// preorder.
std::vector<RootedTree> all_shapes(std::size_t n);

/// Every set partition of {0..n-1} as a restricted growth string.
std::vector<std::vector<int>> all_set_partitions(std::size_t n);

/// Binds block[i] of the i-th leaf in preorder.
LeafPartition partition_of_leaves(const RootedTree& tree, const std::vector<int>& block);

}  // namespace xeno::oracle
