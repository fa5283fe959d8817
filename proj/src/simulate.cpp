#include "xeno/simulate.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace xeno::sim {

namespace {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

double parse_double(std::string_view s) {
  double x = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw InputError("not a number: '" + std::string(s) + "'");
  }
  return x;
}

}  // namespace

void RateConfig::validate() const {
  for (double r : {duplication, loss, hgt}) {
    if (!(r >= 0) || !std::isfinite(r)) throw std::invalid_argument("rates must be finite and nonnegative");
  }
  if (species_leaves_min < 2) throw std::invalid_argument("species trees need at least two leaves");
  if (species_leaves_min > species_leaves_max) throw std::invalid_argument("species leaf range is empty");
}

std::string RateConfig::key() const {
  return format_double(duplication) + "," + format_double(loss) + "," + format_double(hgt);
}

RateConfig parse_rates(const std::string& text) {
  std::vector<double> v;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    v.push_back(parse_double(std::string_view(text).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (v.size() != 3) throw InputError("rates must be given as d,l,h");
  RateConfig r;
  r.duplication = v[0];
  r.loss = v[1];
  r.hgt = v[2];
  try {
    r.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return r;
}

std::vector<RateConfig> default_rate_grid() {
  std::vector<RateConfig> grid;
  for (auto [d, l, h] : {std::array{0.5, 0.5, 0.5}, std::array{1.0, 1.0, 0.5}, std::array{1.0, 1.0, 1.0},
                         std::array{1.0, 1.0, 1.5}}) {
    RateConfig r;
    r.duplication = d;
    r.loss = l;
    r.hgt = h;
    grid.push_back(r);
  }
  return grid;
}

DatedTree simulate_species_tree(std::size_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("species tree needs at least two leaves");
  std::vector<RootedTree::Node> nodes(1);
  std::vector<double> time(1, 0.0);
  std::vector<Vertex> active{0};
  double t = 0;
  while (active.size() < n) {
    t += std::exponential_distribution<double>(static_cast<double>(active.size()))(rng);
    const auto i = std::uniform_int_distribution<std::size_t>(0, active.size() - 1)(rng);
    const Vertex a = active[i];
    time[a] = t;
    for (int side = 0; side < 2; ++side) {
      const auto c = static_cast<Vertex>(nodes.size());
      nodes.emplace_back();
      nodes.back().parent = a;
      nodes[a].children.push_back(c);
      time.push_back(0.0);
      if (side == 0) {
        active[i] = c;
      } else {
        active.push_back(c);
      }
    }
  }
  const double end = t + std::exponential_distribution<double>(static_cast<double>(n))(rng);
  for (auto& x : time) x /= end;
  std::size_t next = 0;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (nodes[v].children.empty()) {
      nodes[v].label = "S" + std::to_string(next++);
      time[v] = 1.0;
    }
  }
  return DatedTree{RootedTree(std::move(nodes)), std::move(time)};
}

std::string_view to_string(GeneEvent e) {
  switch (e) {
    case GeneEvent::kOrigin:
      return "origin";
    case GeneEvent::kSpeciation:
      return "speciation";
    case GeneEvent::kDuplication:
      return "duplication";
    case GeneEvent::kHgt:
      return "hgt";
    case GeneEvent::kLoss:
      return "loss";
    case GeneEvent::kLeaf:
      return "leaf";
  }
  return "?";
}

GeneTree simulate_gene_tree(const DatedTree& species, const RateConfig& rates, Rng& rng,
                            std::size_t max_lineages) {
  const auto& st = species.tree;
  struct Lineage {
    Vertex parent;
    Vertex branch;
    bool transferred;
  };
  GeneTree g;
  g.nodes.emplace_back();
  g.nodes[0].species = st.root();

  auto add_node = [&](const Lineage& l, GeneEvent e, Vertex branch, double t) {
    const auto v = static_cast<Vertex>(g.nodes.size());
    GeneNode n;
    n.parent = l.parent;
    n.event = e;
    n.species = branch;
    n.time = t;
    n.transferred = l.transferred;
    g.nodes.push_back(std::move(n));
    g.nodes[l.parent].children.push_back(v);
    return v;
  };

  std::vector<Vertex> splits;
  for (Vertex v : st.preorder()) {
    if (!st.is_leaf(v)) splits.push_back(v);
  }
  std::stable_sort(splits.begin(), splits.end(),
                   [&](Vertex a, Vertex b) { return species.time[a] < species.time[b]; });

  const double total = rates.duplication + rates.loss + rates.hgt;
  std::discrete_distribution<int> kind({rates.duplication, rates.loss, rates.hgt});
  std::vector<Lineage> alive{{0, st.root(), false}};
  std::size_t next_split = 0;
  double t = 0;
  while (true) {
    const double rate = total * static_cast<double>(alive.size());
    const double t_event = rate > 0 ? t + std::exponential_distribution<double>(rate)(rng)
                                    : std::numeric_limits<double>::infinity();
    const double t_split = next_split < splits.size() ? species.time[splits[next_split]] : 1.0;
    if (t_event >= t_split) {
      t = t_split;
      if (next_split == splits.size()) break;
      const Vertex s = splits[next_split++];
      std::vector<Lineage> after;
      for (const auto& l : alive) {
        if (l.branch != s) {
          after.push_back(l);
          continue;
        }
        const Vertex v = add_node(l, GeneEvent::kSpeciation, s, t);
        for (Vertex c : st.children(s)) after.push_back({v, c, false});
      }
      alive = std::move(after);
      continue;
    }
    t = t_event;
    const auto i = std::uniform_int_distribution<std::size_t>(0, alive.size() - 1)(rng);
    const Lineage l = alive[i];
    switch (kind(rng)) {
      case 0: {
        const Vertex v = add_node(l, GeneEvent::kDuplication, l.branch, t);
        alive[i] = {v, l.branch, false};
        alive.push_back({v, l.branch, false});
        break;
      }
      case 1: {
        add_node(l, GeneEvent::kLoss, l.branch, t);
        alive[i] = alive.back();
        alive.pop_back();
        break;
      }
      default: {
        std::vector<Vertex> others;
        for (Vertex b : st.preorder()) {
          if (b != l.branch && species.start(b) <= t && t < species.time[b]) others.push_back(b);
        }
        if (others.empty()) break;
        const Vertex to = others[std::uniform_int_distribution<std::size_t>(0, others.size() - 1)(rng)];
        const Vertex v = add_node(l, GeneEvent::kHgt, l.branch, t);
        g.nodes[v].recipient = to;
        alive[i] = {v, l.branch, false};
        alive.push_back({v, to, true});
        break;
      }
    }
    if (alive.size() > max_lineages) throw std::runtime_error("gene lineage count exceeded the simulation cap");
  }
  std::vector<std::size_t> per_species(st.size(), 0);
  for (const auto& l : alive) {
    const Vertex v = add_node(l, GeneEvent::kLeaf, l.branch, 1.0);
    g.nodes[v].label = st.label(l.branch) + "_" + std::to_string(per_species[l.branch]++);
  }
  return g;
}

Scenario prune_and_extract(DatedTree species, GeneTree full) {
  Scenario s{.seed = 0, .rates = {}, .species = std::move(species), .full = std::move(full),
             .extinct = false, .tree = {}, .transfers = {}, .partition = {}, .full_of = {}};
  const auto& nodes = s.full.nodes;
  const auto n = nodes.size();

  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<Vertex> stack{0};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto it = nodes[v].children.rbegin(); it != nodes[v].children.rend(); ++it) stack.push_back(*it);
  }
  std::vector<int> surviving_children(n, 0);
  std::vector<char> alive(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (nodes[v].event == GeneEvent::kLeaf) alive[v] = 1;
    for (Vertex c : nodes[v].children) surviving_children[v] += alive[c];
    if (surviving_children[v] > 0) alive[v] = 1;
  }
  if (!alive[0]) {
    s.extinct = true;
    return s;
  }

  // anchor: pruned vertex a kept node hangs from; mark: transfer seen since.
  std::vector<Vertex> anchor(n, kNoVertex);
  std::vector<char> mark(n, 0);
  std::vector<RootedTree::Node> pruned;
  std::vector<char> pruned_mark;
  for (Vertex v : order) {
    if (!alive[v]) continue;
    const bool kept = nodes[v].event == GeneEvent::kLeaf || surviving_children[v] >= 2;
    Vertex below = anchor[v];
    if (kept) {
      below = static_cast<Vertex>(pruned.size());
      RootedTree::Node p;
      p.parent = anchor[v];
      p.label = nodes[v].label;
      pruned.push_back(std::move(p));
      pruned_mark.push_back(anchor[v] != kNoVertex && mark[v]);
      if (anchor[v] != kNoVertex) pruned[anchor[v]].children.push_back(below);
      s.full_of.push_back(v);
    }
    for (Vertex c : nodes[v].children) {
      if (!alive[c]) continue;
      anchor[c] = below;
      mark[c] = static_cast<char>((kept ? 0 : mark[v]) | nodes[c].transferred);
    }
  }
  s.tree.emplace(std::move(pruned));
  for (std::size_t v = 0; v < pruned_mark.size(); ++v) {
    if (pruned_mark[v]) s.transfers.edges.push_back(static_cast<Vertex>(v));
  }
  s.partition = induced_partition(*s.tree, s.transfers);
  return s;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t config, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(master ^ mix((config << 32) ^ index));
}

Scenario simulate_scenario(const RateConfig& rates, std::uint64_t seed) {
  rates.validate();
  Rng rng(seed);
  const auto n = std::uniform_int_distribution<std::size_t>(rates.species_leaves_min, rates.species_leaves_max)(rng);
  auto species = simulate_species_tree(n, rng);
  auto full = simulate_gene_tree(species, rates, rng);
  Scenario s = prune_and_extract(std::move(species), std::move(full));
  s.seed = seed;
  s.rates = rates;
  return s;
}

void run_experiment(const std::vector<RateConfig>& configs, std::size_t count, std::uint64_t master_seed,
                    const std::function<void(const Scenario&)>& sink) {
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t i = 0; i < count; ++i) sink(simulate_scenario(configs[c], derive_seed(master_seed, c, i)));
  }
}

std::string corpus_record(const Scenario& s) {
  nlohmann::json j;
  j["seed"] = s.seed;
  j["rates"] = {s.rates.duplication, s.rates.loss, s.rates.hgt};
  j["species_leaves"] = s.species.tree.leaf_count();
  j["extinct"] = s.extinct;
  if (s.extinct) {
    j["newick_T"] = "";
    j["H"] = nlohmann::json::array();
    j["partition"] = nlohmann::json::array();
  } else {
    const auto& t = s.gene_tree();
    j["newick_T"] = write_newick(t);
    j["H"] = nlohmann::json::array();
    for (Vertex v : s.transfers.edges) j["H"].push_back(t.vertex_id(v));
    j["partition"] = to_labels(t, s.partition).classes;
  }
  auto& events = j["events"] = nlohmann::json::array();
  for (const auto& n : s.full.nodes) {
    if (n.event == GeneEvent::kOrigin || n.event == GeneEvent::kLeaf) continue;
    nlohmann::json e = {{"t", n.time}, {"type", to_string(n.event)}, {"branch", n.species}};
    if (n.event == GeneEvent::kHgt) e["to"] = n.recipient;
    events.push_back(std::move(e));
  }
  return j.dump();
}

bool transfers_consistent(const Scenario& s) {
  if (s.extinct) return true;
  const auto& st = s.species.tree;
  auto is_ancestor = [&](Vertex a, Vertex b) {
    for (; b != kNoVertex; b = st.parent(b)) {
      if (a == b) return true;
    }
    return false;
  };
  const auto& t = s.gene_tree();
  for (Vertex v : s.transfers.edges) {
    const Vertex stop = s.full_of[t.parent(v)];
    bool found = false;
    for (Vertex x = s.full_of[v]; x != stop; x = s.full.nodes[x].parent) {
      if (!s.full.nodes[x].transferred) continue;
      const auto& donor = s.full.nodes[s.full.nodes[x].parent];
      if (donor.event != GeneEvent::kHgt) return false;
      const Vertex a = donor.species;
      const Vertex b = donor.recipient;
      const double when = donor.time;
      const bool coexist = s.species.start(a) <= when && when < s.species.time[a] &&
                           s.species.start(b) <= when && when < s.species.time[b];
      if (coexist && !is_ancestor(a, b) && !is_ancestor(b, a)) found = true;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace xeno::sim
