#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "xeno/partition.hpp"
#include "xeno/separating.hpp"
#include "xeno/tree.hpp"

namespace xeno::report {

/// One corpus line as written by `xeno simulate`.
struct CorpusRecord {
  std::uint64_t seed = 0;
  std::array<double, 3> rates{};
  std::size_t species_leaves = 0;
  bool extinct = false;
  std::string newick;
  std::vector<std::string> transfers;
  Partition partition;

  std::string rates_key() const;
};

/// Throws InputError on malformed JSON or missing fields.
CorpusRecord parse_record(std::string_view line);
/// Skips blank lines; errors name the line number.
std::vector<CorpusRecord> read_corpus(std::istream& in);

/// A surviving scenario, checked: P must equal partTH(T, H).
struct Instance {
  RootedTree tree;
  SeparatingSet transfers;
  LeafPartition partition;
};
Instance load_instance(const CorpusRecord& r);

struct FractionRow {
  std::string rates;
  std::vector<double> mean;
  /// Per column: min, lower quartile, median, upper quartile, max.
  std::vector<std::array<double, 5>> quantiles;
  std::size_t n = 0;      // scenarios included
  std::size_t total = 0;  // scenarios with these rates
  double included_pct() const { return total == 0 ? 0.0 : 100.0 * static_cast<double>(n) / static_cast<double>(total); }
};

struct FractionTable {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<FractionRow> rows;  // in order of first appearance in the corpus
  /// Per included scenario: rates key, seed and fractions.
  struct Sample {
    std::string rates;
    std::uint64_t seed;
    std::vector<double> fractions;
  };
  std::vector<Sample> samples;
};

/// Scenarios with at least two leaves; fractions of T's edges that are
/// essential, ambiguous and in H, ambiguous and not in H, forbidden.
FractionTable edge_fraction_table(const std::vector<CorpusRecord>& corpus);

enum class PairLevel { kLeaf, kQuotient };
/// Scenarios with |P| > 1; ordered cross-class pairs counted over leaf pairs
/// or over class pairs. Ambiguous pairs are split by presence in the true
/// Fitch graph.
FractionTable pair_fraction_table(const std::vector<CorpusRecord>& corpus, PairLevel level);

/// Contracts each inner edge with probability p, then classifies leaf-level
/// cross pairs with the refinement-aware classifier. A stand-in for
/// minors derived from other inference methods.
FractionTable contraction_experiment(const std::vector<CorpusRecord>& corpus, double p, std::uint64_t seed);

std::string to_csv(const FractionTable& t);
std::string to_json(const FractionTable& t);
/// rates,seed,<columns>
std::string samples_csv(const FractionTable& t);

}  // namespace xeno::report
