#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "xeno/fitch.hpp"
#include "xeno/partition.hpp"
#include "xeno/separating.hpp"
#include "xeno/tree.hpp"

namespace xeno::sim {

using Rng = std::mt19937_64;

struct RateConfig {
  double duplication = 1.0;
  double loss = 1.0;
  double hgt = 1.0;
  std::size_t species_leaves_min = 10;
  std::size_t species_leaves_max = 100;

  /// Throws std::invalid_argument on negative rates or min > max or min < 2.
  void validate() const;
  /// "d,l,h" with shortest round-trip formatting.
  std::string key() const;
};

/// Parses "d,l,h".
RateConfig parse_rates(const std::string& text);

/// The default grid.
std::vector<RateConfig> default_rate_grid();

/// Species tree with a planted stem: the stem starts at time 0, leaves sit at
/// time 1, and time[v] is the time of vertex v.
struct DatedTree {
  RootedTree tree;
  std::vector<double> time;

  /// Start of the branch above v (0 for the root's stem).
  double start(Vertex v) const { return tree.parent(v) == kNoVertex ? 0.0 : time[tree.parent(v)]; }
};

/// Yule process with unit rate, stopped at n lineages; the end time is one
/// more exponential waiting time, and all times are divided by it.
DatedTree simulate_species_tree(std::size_t n, Rng& rng);

enum class GeneEvent { kOrigin, kSpeciation, kDuplication, kHgt, kLoss, kLeaf };
std::string_view to_string(GeneEvent e);

struct GeneNode {
  Vertex parent = kNoVertex;
  std::vector<Vertex> children;
  GeneEvent event = GeneEvent::kOrigin;
  Vertex species = kNoVertex;    // species branch (keyed by its lower vertex)
  Vertex recipient = kNoVertex;  // kHgt only
  double time = 0.0;
  bool transferred = false;      // the edge above is a transfer edge
  std::string label;             // kLeaf only
};

/// Node 0 is the origin at time 0 on the species stem, with one child.
struct GeneTree {
  std::vector<GeneNode> nodes;
};

/// Global-clock event simulation; see the README for the protocol. An HGT
/// drawn while no other species branch exists is skipped. Throws
/// std::runtime_error if more than `max_lineages` coexist.
GeneTree simulate_gene_tree(const DatedTree& species, const RateConfig& rates, Rng& rng,
                            std::size_t max_lineages = 200000);

struct Scenario {
  std::uint64_t seed = 0;
  RateConfig rates;
  DatedTree species;
  GeneTree full;
  bool extinct = false;
  /// Everything below is only meaningful when !extinct.
  std::optional<RootedTree> tree;
  SeparatingSet transfers;
  LeafPartition partition;
  std::vector<Vertex> full_of;  // pruned vertex -> full gene tree node

  const RootedTree& gene_tree() const { return tree.value(); }
};

/// Drops loss-only subtrees and suppresses degree-2 vertices. A suppressed
/// path is a transfer edge iff one of its edges was; marks above the new
/// root are dropped.
Scenario prune_and_extract(DatedTree species, GeneTree full);

/// The whole pipeline for one scenario; species size is drawn uniformly from
/// the configured range.
Scenario simulate_scenario(const RateConfig& rates, std::uint64_t seed);

/// Seed of scenario `index` under configuration `config`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t config, std::uint64_t index);

/// Runs `count` scenarios per configuration, in order, passing each to `sink`.
void run_experiment(const std::vector<RateConfig>& configs, std::size_t count, std::uint64_t master_seed,
                    const std::function<void(const Scenario&)>& sink);

/// One line of the JSON-lines corpus (no trailing newline).
std::string corpus_record(const Scenario& s);

/// For each transfer edge of the pruned tree, whether some transfer edge on
/// the corresponding full-tree path joins incomparable species branches that
/// both exist at the transfer time.
bool transfers_consistent(const Scenario& s);

}  // namespace xeno::sim
