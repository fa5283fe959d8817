// xeno: command-line front end.
// Exit codes: 0 ok, 1 incompatible input (verdict), 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "xeno/classify.hpp"
#include "xeno/fitch.hpp"
#include "xeno/oracle.hpp"
#include "xeno/refine.hpp"
#include "xeno/report.hpp"
#include "xeno/separating.hpp"
#include "xeno/simulate.hpp"

namespace {

using namespace xeno;

constexpr int kIncompatible = 1;
constexpr int kBadInput = 2;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::uint64_t seed_from(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("XENO_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("XENO_SEED is not an unsigned integer");
  }
  return 1;
}

struct Loaded {
  RootedTree tree;
  Partition labels;
  LeafPartition partition;
};

Loaded load(const std::string& tree_path, const std::string& parts_path) {
  RootedTree tree = parse_newick(slurp(tree_path));
  Partition labels = parse_partition(slurp(parts_path));
  LeafPartition p = bind_partition(tree, labels);
  return {std::move(tree), std::move(labels), std::move(p)};
}

// "not compatible; r-compatible" and so on.
[[noreturn]] void incompatible(const RootedTree& tree, const LeafPartition& p) {
  const bool c = vertex_coloring(tree, p).compatible;
  const bool r = edge_coloring(tree, p).r_compatible;
  throw IncompatibleError(std::string(c ? "compatible" : "not compatible") + "; " +
                          (r ? "r-compatible" : "not r-compatible"));
}

int run_classify_edges(const std::string& tree_path, const std::string& parts_path, bool json) {
  const auto in = load(tree_path, parts_path);
  const auto coloring = vertex_coloring(in.tree, in.partition);
  if (!coloring.compatible) incompatible(in.tree, in.partition);
  const auto classes = classify_tree_edges(in.tree, coloring);
  if (json) {
    nlohmann::json j = nlohmann::json::object();
    for (Vertex v : in.tree.preorder()) {
      if (v != in.tree.root()) j[in.tree.vertex_id(v)] = to_string(classes[v]);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "edge,verdict\n";
  for (Vertex v : in.tree.preorder()) {
    if (v != in.tree.root()) std::cout << in.tree.vertex_id(v) << "," << to_string(classes[v]) << "\n";
  }
  return 0;
}

struct PairOptions {
  bool refinements = false;
  bool oracle = false;
  bool json = false;
  oracle::OracleBudget budget;
};

int run_classify_pairs(const std::string& tree_path, const std::string& parts_path, const PairOptions& opt) {
  const auto in = load(tree_path, parts_path);
  std::vector<std::vector<PairClass>> m;
  if (opt.refinements) {
    if (!edge_coloring(in.tree, in.partition).r_compatible) incompatible(in.tree, in.partition);
    m = opt.oracle ? oracle::oracle_rpair_classes(in.tree, in.partition, opt.budget)
                   : classify_all(RPairClassifier(in.tree, in.partition));
  } else {
    if (!vertex_coloring(in.tree, in.partition).compatible) incompatible(in.tree, in.partition);
    m = opt.oracle ? oracle::oracle_pair_classes(in.tree, in.partition, opt.budget)
                   : classify_all(PairClassifier(in.tree, in.partition));
  }
  const auto k = in.partition.size();
  if (opt.json) {
    nlohmann::json j;
    j["classes"] = nlohmann::json::array();
    for (std::size_t a = 0; a < k; ++a) j["classes"].push_back(in.labels.name(static_cast<ClassId>(a)));
    j["matrix"] = nlohmann::json::array();
    for (std::size_t a = 0; a < k; ++a) {
      auto row = nlohmann::json::array();
      for (std::size_t b = 0; b < k; ++b) {
        if (a == b) {
          row.push_back(nullptr);
        } else {
          row.push_back(to_string(m[a][b], opt.refinements));
        }
      }
      j["matrix"].push_back(std::move(row));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "classA,classB,verdict\n";
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      std::cout << in.labels.name(static_cast<ClassId>(a)) << "," << in.labels.name(static_cast<ClassId>(b)) << ","
                << to_string(m[a][b], opt.refinements) << "\n";
    }
  }
  return 0;
}

int run_refine(const std::string& tree_path, const std::string& parts_path) {
  const auto in = load(tree_path, parts_path);
  if (!edge_coloring(in.tree, in.partition).r_compatible) incompatible(in.tree, in.partition);
  std::cout << write_newick(star_refinement(in.tree, in.partition)) << "\n";
  std::cout << write_newick(urs_tree(in.tree, in.partition)) << "\n";
  return 0;
}

int run_fitch(const std::string& tree_path, const std::string& h_path, const std::string& format) {
  const RootedTree tree = parse_newick(slurp(tree_path));
  const SeparatingSet h = parse_separating_set(tree, slurp(h_path));
  const FitchGraph f = fitch_graph(tree, h);
  if (format == "dot") {
    std::cout << to_dot(f);
  } else if (format == "edges") {
    for (auto [a, b] : f.arcs.pairs()) std::cout << f.arcs.labels()[a] << "\t" << f.arcs.labels()[b] << "\n";
  } else {
    std::cout << to_json(f) << "\n";
  }
  return 0;
}

int run_partition_from_graph(const std::string& path) {
  std::cout << write_partition(partition_from_graph(parse_edge_list(slurp(path))));
  return 0;
}

struct SimulateOptions {
  std::vector<std::string> rates;
  std::size_t count = 100;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
  std::size_t min_leaves = 10;
  std::size_t max_leaves = 100;
};

int run_simulate(const SimulateOptions& opt) {
  std::vector<sim::RateConfig> configs;
  for (const auto& r : opt.rates) configs.push_back(sim::parse_rates(r));
  if (configs.empty()) configs = sim::default_rate_grid();
  for (auto& c : configs) {
    c.species_leaves_min = opt.min_leaves;
    c.species_leaves_max = opt.max_leaves;
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (opt.out != "-") {
    file.open(opt.out, std::ios::binary);
    if (!file) throw InputError("cannot write '" + opt.out + "'");
    out = &file;
  }
  sim::run_experiment(configs, opt.count, seed_from(opt.seed),
                      [&](const sim::Scenario& s) { *out << sim::corpus_record(s) << "\n"; });
  return 0;
}

struct StatsOptions {
  std::string corpus;
  std::string table = "pairs";
  std::string csv;
  std::string json;
  std::string samples;
  double p = 0.25;
  std::optional<std::uint64_t> seed;
};

int run_stats(const StatsOptions& opt) {
  std::istringstream in(slurp(opt.corpus));
  const auto corpus = report::read_corpus(in);
  report::FractionTable t;
  if (opt.table == "edges") {
    t = report::edge_fraction_table(corpus);
  } else if (opt.table == "pairs") {
    t = report::pair_fraction_table(corpus, report::PairLevel::kLeaf);
  } else if (opt.table == "qpairs") {
    t = report::pair_fraction_table(corpus, report::PairLevel::kQuotient);
  } else {
    t = report::contraction_experiment(corpus, opt.p, seed_from(opt.seed));
    std::cerr << "note: random edge contraction stands in for inferred tree minors\n";
  }
  if (!opt.csv.empty() || opt.json.empty()) emit(opt.csv, report::to_csv(t));
  if (!opt.json.empty()) emit(opt.json, report::to_json(t) + "\n");
  if (!opt.samples.empty()) emit(opt.samples, report::samples_csv(t));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify transfer edges and class pairs of a gene tree"};
  app.require_subcommand(1);

  std::string tree_path, parts_path, h_path, graph_path;
  bool json = false;

  auto* edges = app.add_subcommand("classify-edges", "essential / forbidden / ambiguous verdict per tree edge");
  edges->add_option("tree", tree_path, "Newick file ('-' for stdin)")->required();
  edges->add_option("partition", parts_path, "partition file, one class per line")->required();
  edges->add_flag("--json", json, "JSON object keyed by edge");

  PairOptions pair_opt;
  auto* pairs = app.add_subcommand("classify-pairs", "verdict per ordered pair of classes");
  pairs->add_option("tree", tree_path, "Newick file")->required();
  pairs->add_option("partition", parts_path, "partition file")->required();
  pairs->add_flag("--refinements", pair_opt.refinements, "quantify over compatible refinements");
  pairs->add_flag("--oracle", pair_opt.oracle, "use brute-force enumeration (small trees only)");
  pairs->add_option("--max-leaves", pair_opt.budget.max_leaves, "oracle budget")->capture_default_str();
  pairs->add_option("--max-degree", pair_opt.budget.max_degree, "oracle budget")->capture_default_str();
  pairs->add_option("--max-refinements", pair_opt.budget.max_refinements, "oracle budget")->capture_default_str();
  pairs->add_flag("--json", pair_opt.json, "|P| x |P| matrix");

  auto* refine = app.add_subcommand("refine", "print T* and a URS-tree as Newick");
  refine->add_option("tree", tree_path, "Newick file")->required();
  refine->add_option("partition", parts_path, "partition file")->required();

  std::string format = "json";
  auto* fitch = app.add_subcommand("fitch", "Fitch graph of a tree and transfer-edge set");
  fitch->add_option("tree", tree_path, "Newick file")->required();
  fitch->add_option("transfers", h_path, "one edge id per line (child label or @preorder-index)")->required();
  fitch->add_option("--format", format, "json, dot or edges")
      ->check(CLI::IsMember({"json", "dot", "edges"}))
      ->capture_default_str();

  auto* pfg = app.add_subcommand("partition-from-graph", "independent sets of a complete multipartite graph");
  pfg->add_option("edges", graph_path, "edge list, one 'u v' per line")->required();

  SimulateOptions sim_opt;
  auto* simulate = app.add_subcommand("simulate", "write a JSON-lines scenario corpus");
  simulate->add_option("--rates", sim_opt.rates, "d,l,h (repeatable; default grid if omitted)");
  simulate->add_option("--count", sim_opt.count, "scenarios per rate configuration")->capture_default_str();
  simulate->add_option("--seed", sim_opt.seed, "master seed (else XENO_SEED, else 1)");
  simulate->add_option("--out", sim_opt.out, "output path")->capture_default_str();
  simulate->add_option("--min-leaves", sim_opt.min_leaves, "species tree size range")->capture_default_str();
  simulate->add_option("--max-leaves", sim_opt.max_leaves, "species tree size range")->capture_default_str();

  StatsOptions stats_opt;
  auto* stats = app.add_subcommand("stats", "fraction tables over a corpus");
  stats->add_option("corpus", stats_opt.corpus, "JSON-lines corpus")->required();
  stats->add_option("--table", stats_opt.table, "edges, pairs, qpairs or contraction")
      ->check(CLI::IsMember({"edges", "pairs", "qpairs", "contraction"}))
      ->capture_default_str();
  stats->add_option("--csv", stats_opt.csv, "CSV output path (default stdout)");
  stats->add_option("--json", stats_opt.json, "JSON output path, with quantiles");
  stats->add_option("--samples", stats_opt.samples, "per-scenario CSV output path");
  stats->add_option("--p", stats_opt.p, "contraction probability")->capture_default_str();
  stats->add_option("--seed", stats_opt.seed, "contraction seed (else XENO_SEED, else 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*edges) return run_classify_edges(tree_path, parts_path, json);
    if (*pairs) return run_classify_pairs(tree_path, parts_path, pair_opt);
    if (*refine) return run_refine(tree_path, parts_path);
    if (*fitch) return run_fitch(tree_path, h_path, format);
    if (*pfg) return run_partition_from_graph(graph_path);
    if (*simulate) return run_simulate(sim_opt);
    if (*stats) return run_stats(stats_opt);
  } catch (const IncompatibleError& e) {
    std::cerr << "xeno: " << e.what() << "\n";
    return kIncompatible;
  } catch (const NotMultipartiteError& e) {
    std::cerr << "xeno: " << e.what() << "\n";
    return kIncompatible;
  } catch (const InputError& e) {
    std::cerr << "xeno: " << e.what() << "\n";
    return kBadInput;
  } catch (const oracle::BudgetExceeded& e) {
    std::cerr << "xeno: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
