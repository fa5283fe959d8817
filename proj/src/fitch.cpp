#include "xeno/fitch.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace xeno {

LabeledGraph::LabeledGraph(std::vector<std::string> labels)
    : labels_(std::move(labels)), adj_(labels_.size() * labels_.size(), 0) {}

std::size_t LabeledGraph::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InputError("unknown vertex '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> LabeledGraph::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (has(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

std::vector<std::string> leaf_labels(const RootedTree& tree) {
  std::vector<std::string> labels;
  for (Vertex v : tree.leaves()) labels.push_back(tree.label(v));
  return labels;
}

}  // namespace

FitchGraph fitch_graph(const RootedTree& tree, const AncestryIndex& index, const SeparatingSet& h) {
  const auto cut = h.mask(tree.size());
  std::vector<Vertex> top(tree.size(), kNoVertex);
  for (Vertex v : tree.preorder()) top[v] = (v == tree.root() || cut[v]) ? v : top[tree.parent(v)];

  FitchGraph f{LabeledGraph(leaf_labels(tree))};
  const auto& leaves = tree.leaves();
  for (std::size_t j = 0; j < leaves.size(); ++j) {
    const Vertex y = leaves[j];
    const auto top_depth = index.depth(top[y]);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (i == j) continue;
      if (index.depth(index.lca_unchecked(leaves[i], y)) < top_depth) f.arcs.set(i, j);
    }
  }
  return f;
}

FitchGraph fitch_graph(const RootedTree& tree, const SeparatingSet& h) {
  return fitch_graph(tree, AncestryIndex(tree), h);
}

FitchGraph fitch_graph_naive(const RootedTree& tree, const SeparatingSet& h) {
  FitchGraph f{LabeledGraph(leaf_labels(tree))};
  const auto& leaves = tree.leaves();
  std::vector<char> above_x(tree.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    std::fill(above_x.begin(), above_x.end(), 0);
    for (Vertex v = leaves[i]; v != kNoVertex; v = tree.parent(v)) above_x[v] = 1;
    for (std::size_t j = 0; j < leaves.size(); ++j) {
      if (i == j) continue;
      bool crosses = false;
      for (Vertex v = leaves[j]; !above_x[v]; v = tree.parent(v)) crosses = crosses || h.contains(v);
      if (crosses) f.arcs.set(i, j);
    }
  }
  return f;
}

UndirectedGraph symmetrize(const FitchGraph& f) {
  UndirectedGraph g{LabeledGraph(f.arcs.labels())};
  for (auto [i, j] : f.arcs.pairs()) {
    g.edges.set(i, j);
    g.edges.set(j, i);
  }
  return g;
}

QuotientGraph quotient(const FitchGraph& f, const Partition& p, bool checked) {
  const auto n = f.arcs.size();
  std::vector<ClassId> class_of(n, kNoClass);
  std::vector<std::size_t> rep(p.classes.size(), n);
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    for (const auto& label : p.classes[c]) {
      const auto i = f.arcs.index_of(label);
      if (class_of[i] != kNoClass) throw InputError("leaf '" + label + "' is in two classes");
      class_of[i] = static_cast<ClassId>(c);
      if (rep[c] == n) rep[c] = i;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (class_of[i] == kNoClass) throw InputError("leaf '" + f.arcs.labels()[i] + "' is in no class");
  }

  QuotientGraph q;
  q.classes = p.classes.size();
  q.adj.assign(q.classes * q.classes, 0);
  for (std::size_t a = 0; a < q.classes; ++a) {
    for (std::size_t b = 0; b < q.classes; ++b) {
      if (a != b && f.arcs.has(rep[a], rep[b])) q.adj[a * q.classes + b] = 1;
    }
  }
  if (checked) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto a = class_of[i];
        const auto b = class_of[j];
        if (a == b) continue;
        if (f.arcs.has(i, j) != q.has_arc(a, b)) {
          throw InputError("quotient is not well defined: arc (" + f.arcs.labels()[i] + "," +
                           f.arcs.labels()[j] + ") disagrees with its class pair");
        }
      }
    }
  }
  return q;
}

NotMultipartiteError::NotMultipartiteError(std::array<std::string, 3> witness)
    : InputError("graph is not complete multipartite: " + witness[0] + " and " + witness[1] +
                 " are non-adjacent, " + witness[1] + " and " + witness[2] + " are non-adjacent, but " +
                 witness[0] + " and " + witness[2] + " are adjacent"),
      witness_(std::move(witness)) {}

Partition partition_from_graph(const UndirectedGraph& g) {
  const auto& adj = g.edges;
  const auto n = adj.size();
  // Greedy: join the first class whose representative is non-adjacent.
  std::vector<std::size_t> reps;
  std::vector<std::size_t> class_of(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t c = 0;
    while (c < reps.size() && adj.has(v, reps[c])) ++c;
    if (c == reps.size()) reps.push_back(v);
    class_of[v] = c;
  }
  auto witness = [&](std::size_t x, std::size_t y, std::size_t z) {
    return NotMultipartiteError({adj.labels()[x], adj.labels()[y], adj.labels()[z]});
  };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = u + 1; w < n; ++w) {
      const bool same = class_of[u] == class_of[w];
      const bool adjacent = adj.has(u, w);
      if (same && adjacent) {
        // Neither is the representative (both joined it by non-adjacency).
        throw witness(u, reps[class_of[u]], w);
      }
      if (!same && !adjacent) {
        std::size_t a = u;
        std::size_t b = w;
        const auto ra = reps[class_of[a]];
        if (ra != a) {
          if (adj.has(ra, b)) throw witness(ra, a, b);
          a = ra;
        }
        const auto rb = reps[class_of[b]];
        if (rb != b) {
          if (adj.has(rb, a)) throw witness(rb, b, a);
          b = rb;
        }
        // A representative is adjacent to every earlier representative.
        throw std::logic_error("non-adjacent representatives " + adj.labels()[a] + ", " + adj.labels()[b]);
      }
    }
  }

  Partition p;
  p.classes.resize(reps.size());
  for (std::size_t v = 0; v < n; ++v) p.classes[class_of[v]].push_back(adj.labels()[v]);
  return p;
}

UndirectedGraph parse_edge_list(std::string_view text) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto intern = [&](const std::string& label) {
    auto [it, fresh] = index.emplace(label, labels.size());
    if (fresh) labels.push_back(label);
    return it->second;
  };
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == '\t' || line[i] == ' ' || line[i] == '\r')) ++i;
      const auto start = i;
      while (i < line.size() && line[i] != '\t' && line[i] != ' ' && line[i] != '\r') ++i;
      if (i > start) fields.emplace_back(line.substr(start, i - start));
    }
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() > 2) throw InputError("edge list line " + std::to_string(line_no) + " has more than two fields");
    const auto u = intern(fields[0]);
    if (fields.size() == 2) {
      const auto v = intern(fields[1]);
      if (u == v) throw InputError("self-loop on line " + std::to_string(line_no));
      edges.emplace_back(u, v);
    }
  }
  UndirectedGraph g{LabeledGraph(labels)};
  for (auto [u, v] : edges) {
    g.edges.set(u, v);
    g.edges.set(v, u);
  }
  return g;
}

std::string to_json(const FitchGraph& f) {
  nlohmann::json j;
  j["nodes"] = f.arcs.labels();
  j["arcs"] = nlohmann::json::array();
  for (auto [a, b] : f.arcs.pairs()) j["arcs"].push_back({f.arcs.labels()[a], f.arcs.labels()[b]});
  return j.dump();
}

std::string to_dot(const FitchGraph& f) {
  std::string out = "digraph fitch {\n";
  for (const auto& l : f.arcs.labels()) out += "  \"" + l + "\";\n";
  for (auto [a, b] : f.arcs.pairs()) {
    out += "  \"" + f.arcs.labels()[a] + "\" -> \"" + f.arcs.labels()[b] + "\";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace xeno
