#include "xeno/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "xeno/classify.hpp"
#include "xeno/fitch.hpp"
#include "xeno/simulate.hpp"

namespace xeno::report {

std::string CorpusRecord::rates_key() const {
  sim::RateConfig r;
  r.duplication = rates[0];
  r.loss = rates[1];
  r.hgt = rates[2];
  return r.key();
}

CorpusRecord parse_record(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("corpus record is not valid JSON: ") + e.what());
  }
  CorpusRecord r;
  try {
    r.seed = j.at("seed").get<std::uint64_t>();
    const auto rates = j.at("rates").get<std::vector<double>>();
    if (rates.size() != 3) throw InputError("corpus record needs three rates");
    std::copy(rates.begin(), rates.end(), r.rates.begin());
    r.species_leaves = j.value("species_leaves", std::size_t{0});
    r.extinct = j.at("extinct").get<bool>();
    r.newick = j.at("newick_T").get<std::string>();
    r.transfers = j.at("H").get<std::vector<std::string>>();
    r.partition.classes = j.at("partition").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed corpus record: ") + e.what());
  }
  if (!r.extinct && r.newick.empty()) throw InputError("surviving scenario without a tree");
  return r;
}

std::vector<CorpusRecord> read_corpus(std::istream& in) {
  std::vector<CorpusRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_record(line));
    } catch (const InputError& e) {
      throw InputError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

Instance load_instance(const CorpusRecord& r) {
  if (r.extinct) throw InputError("scenario is extinct");
  RootedTree tree = parse_newick(r.newick);
  SeparatingSet h;
  for (const auto& id : r.transfers) h.edges.push_back(tree.resolve(id));
  std::sort(h.edges.begin(), h.edges.end());
  LeafPartition p = bind_partition(tree, r.partition);
  if (!same_partition(p, induced_partition(tree, h))) {
    throw InputError("recorded partition differs from the one induced by H");
  }
  return Instance{std::move(tree), std::move(h), std::move(p)};
}

namespace {

std::array<double, 5> quantiles(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::array<double, 5> q{};
  if (xs.empty()) return q;
  for (int i = 0; i < 5; ++i) {
    const double pos = (static_cast<double>(xs.size()) - 1) * i / 4.0;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, xs.size() - 1);
    q[i] = xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
  }
  return q;
}

class Aggregator {
 public:
  Aggregator(std::string kind, std::vector<std::string> columns) {
    table_.kind = std::move(kind);
    table_.columns = std::move(columns);
  }

  void seen(const std::string& rates) {
    if (!rows_.count(rates)) {
      rows_[rates] = table_.rows.size();
      table_.rows.emplace_back().rates = rates;
    }
    ++table_.rows[rows_[rates]].total;
  }

  void add(const std::string& rates, std::uint64_t seed, std::vector<double> fractions) {
    ++table_.rows[rows_.at(rates)].n;
    table_.samples.push_back({rates, seed, std::move(fractions)});
  }

  FractionTable finish() && {
    const auto k = table_.columns.size();
    for (auto& row : table_.rows) {
      row.mean.assign(k, 0.0);
      row.quantiles.assign(k, {});
      for (std::size_t c = 0; c < k; ++c) {
        std::vector<double> xs;
        for (const auto& s : table_.samples) {
          if (s.rates == row.rates) xs.push_back(s.fractions[c]);
        }
        double sum = 0;
        for (double x : xs) sum += x;
        row.mean[c] = xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
        row.quantiles[c] = quantiles(std::move(xs));
      }
    }
    return std::move(table_);
  }

 private:
  FractionTable table_;
  std::map<std::string, std::size_t> rows_;
};

// Weight of each ordered class pair and its true-arc flag.
struct PairCounts {
  std::vector<double> essential_forbidden_present_absent = std::vector<double>(4, 0.0);
  double total = 0;

  void add(PairClass c, bool present, double w) {
    const int slot = c == PairClass::kEssential  ? 0
                     : c == PairClass::kForbidden ? 1
                     : present                    ? 2
                                                  : 3;
    essential_forbidden_present_absent[slot] += w;
    total += w;
  }

  std::vector<double> fractions() const {
    auto out = essential_forbidden_present_absent;
    for (auto& x : out) x /= total;
    return out;
  }
};

template <typename Classifier>
std::vector<double> pair_fractions(const Classifier& c, const Instance& inst, const QuotientGraph& truth,
                                   PairLevel level) {
  PairCounts counts;
  const auto k = inst.partition.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      const double w = level == PairLevel::kLeaf
                           ? static_cast<double>(inst.partition.classes[a].size() * inst.partition.classes[b].size())
                           : 1.0;
      counts.add(c.classify(static_cast<ClassId>(a), static_cast<ClassId>(b)), truth.has_arc(a, b), w);
    }
  }
  return counts.fractions();
}

QuotientGraph true_quotient(const Instance& inst) {
  return quotient(fitch_graph(inst.tree, inst.transfers), to_labels(inst.tree, inst.partition));
}

void require_nonempty(const std::vector<CorpusRecord>& corpus) {
  if (corpus.empty()) throw InputError("corpus is empty");
}

}  // namespace

FractionTable edge_fraction_table(const std::vector<CorpusRecord>& corpus) {
  require_nonempty(corpus);
  Aggregator agg("edges", {"essential", "ambiguous_in_h", "ambiguous_not_in_h", "forbidden"});
  for (const auto& r : corpus) {
    const auto key = r.rates_key();
    agg.seen(key);
    if (r.extinct) continue;
    const auto inst = load_instance(r);
    if (inst.tree.leaf_count() < 2) continue;
    const auto coloring = vertex_coloring(inst.tree, inst.partition);
    const auto classes = classify_tree_edges(inst.tree, coloring);
    std::vector<double> f(4, 0.0);
    for (Vertex v = 0; v < static_cast<Vertex>(inst.tree.size()); ++v) {
      if (v == inst.tree.root()) continue;
      switch (classes[v]) {
        case EdgeClass::kEssential:
          f[0] += 1;
          break;
        case EdgeClass::kAmbiguous:
          f[inst.transfers.contains(v) ? 1 : 2] += 1;
          break;
        case EdgeClass::kForbidden:
          f[3] += 1;
          break;
      }
    }
    for (auto& x : f) x /= static_cast<double>(inst.tree.size() - 1);
    agg.add(key, r.seed, std::move(f));
  }
  return std::move(agg).finish();
}

FractionTable pair_fraction_table(const std::vector<CorpusRecord>& corpus, PairLevel level) {
  require_nonempty(corpus);
  Aggregator agg(level == PairLevel::kLeaf ? "pairs" : "qpairs",
                 {"essential", "forbidden", "ambiguous_present", "ambiguous_absent"});
  for (const auto& r : corpus) {
    const auto key = r.rates_key();
    agg.seen(key);
    if (r.extinct || r.partition.classes.size() < 2) continue;
    const auto inst = load_instance(r);
    const PairClassifier c(inst.tree, inst.partition);
    agg.add(key, r.seed, pair_fractions(c, inst, true_quotient(inst), level));
  }
  return std::move(agg).finish();
}

FractionTable contraction_experiment(const std::vector<CorpusRecord>& corpus, double p, std::uint64_t seed) {
  require_nonempty(corpus);
  if (!(p >= 0 && p < 1)) throw InputError("contraction probability must lie in [0, 1)");
  Aggregator agg("contraction", {"r_essential", "r_forbidden", "r_ambiguous_present", "r_ambiguous_absent"});
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& r = corpus[i];
    const auto key = r.rates_key();
    agg.seen(key);
    if (r.extinct || r.partition.classes.size() < 2) continue;
    const auto inst = load_instance(r);
    sim::Rng rng(sim::derive_seed(seed, 0, i));
    std::bernoulli_distribution coin(p);
    std::vector<Vertex> cut;
    for (Vertex v = 0; v < static_cast<Vertex>(inst.tree.size()); ++v) {
      if (v != inst.tree.root() && !inst.tree.is_leaf(v) && coin(rng)) cut.push_back(v);
    }
    const RootedTree minor = contract_edges(inst.tree, cut);
    const LeafPartition q = rebind(inst.partition, inst.tree, minor);
    // Refinements of a minor include the original tree, so this cannot fail.
    const RPairClassifier c(minor, q);
    agg.add(key, r.seed, pair_fractions(c, inst, true_quotient(inst), PairLevel::kLeaf));
  }
  return std::move(agg).finish();
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

std::string to_csv(const FractionTable& t) {
  std::string out = "rates";
  for (const auto& c : t.columns) out += "," + c;
  out += ",included_pct,n\n";
  for (const auto& row : t.rows) {
    out += quote(row.rates);
    for (double m : row.mean) out += "," + num(m);
    out += "," + num(row.included_pct()) + "," + std::to_string(row.n) + "\n";
  }
  return out;
}

std::string to_json(const FractionTable& t) {
  nlohmann::json j;
  j["table"] = t.kind;
  j["columns"] = t.columns;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r;
    r["rates"] = row.rates;
    r["n"] = row.n;
    r["total"] = row.total;
    r["included_pct"] = row.included_pct();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      r["classes"][t.columns[c]] = {{"mean", row.mean[c]}, {"quantiles", row.quantiles[c]}};
    }
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2);
}

std::string samples_csv(const FractionTable& t) {
  std::string out = "rates,seed";
  for (const auto& c : t.columns) out += "," + c;
  out += "\n";
  for (const auto& s : t.samples) {
    out += quote(s.rates) + "," + std::to_string(s.seed);
    for (double x : s.fractions) out += "," + num(x);
    out += "\n";
  }
  return out;
}

}  // namespace xeno::report
