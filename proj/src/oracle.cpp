#include "xeno/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace xeno::oracle {

namespace {

using Mask = std::uint64_t;

// Leaf-to-leaf path masks over the edges of a small tree.
struct Paths {
  std::vector<Vertex> leaves;
  std::vector<Vertex> edge_child;  // bit e <-> edge above edge_child[e]
  std::vector<ClassId> cls;        // per leaf position
  std::vector<Mask> full;          // [i*n+j] all edges on the path i..j
  std::vector<Mask> half;          // [i*n+j] edges from lca(i,j) down to j
  Mask all_edges = 0;

  std::size_t n() const { return leaves.size(); }
  Mask path(std::size_t i, std::size_t j) const { return full[i * n() + j]; }
  Mask arc(std::size_t i, std::size_t j) const { return half[i * n() + j]; }
};

void check_size(const RootedTree& tree, const OracleBudget& budget) {
  const auto edges = tree.size() - 1;
  if (edges > 2 * budget.max_leaves || edges > 64) {
    throw BudgetExceeded("tree has " + std::to_string(edges) + " edges, over the oracle budget");
  }
}

Paths make_paths(const RootedTree& tree, const LeafPartition& p) {
  Paths out;
  std::vector<int> bit(tree.size(), -1);
  for (Vertex v = 0; v < static_cast<Vertex>(tree.size()); ++v) {
    if (v == tree.root()) continue;
    bit[v] = static_cast<int>(out.edge_child.size());
    out.edge_child.push_back(v);
  }
  out.all_edges = out.edge_child.size() == 64 ? ~Mask{0} : (Mask{1} << out.edge_child.size()) - 1;
  out.leaves = tree.leaves();
  const auto n = out.leaves.size();
  for (Vertex x : out.leaves) out.cls.push_back(p.class_of.at(x));
  out.full.assign(n * n, 0);
  out.half.assign(n * n, 0);
  std::vector<char> above(tree.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(above.begin(), above.end(), 0);
    for (Vertex v = out.leaves[i]; v != kNoVertex; v = tree.parent(v)) above[v] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Mask down = 0;
      Vertex v = out.leaves[j];
      for (; !above[v]; v = tree.parent(v)) down |= Mask{1} << bit[v];
      Mask up = 0;
      for (Vertex w = out.leaves[i]; w != v; w = tree.parent(w)) up |= Mask{1} << bit[w];
      out.half[i * n + j] = down;
      out.full[i * n + j] = down | up;
    }
  }
  return out;
}

Mask hstar_mask(const Paths& paths) {
  Mask used = 0;
  for (std::size_t i = 0; i < paths.n(); ++i) {
    for (std::size_t j = i + 1; j < paths.n(); ++j) {
      if (paths.cls[i] == paths.cls[j]) used |= paths.path(i, j);
    }
  }
  return paths.all_edges & ~used;
}

bool separates(const Paths& paths, Mask h) {
  for (std::size_t i = 0; i < paths.n(); ++i) {
    for (std::size_t j = i + 1; j < paths.n(); ++j) {
      const bool cut = (paths.path(i, j) & h) != 0;
      if (cut == (paths.cls[i] == paths.cls[j])) return false;
    }
  }
  return true;
}

// Separating sets as edge masks, increasing.
std::vector<Mask> separating_masks(const Paths& paths) {
  const Mask hs = hstar_mask(paths);
  // No subset of H* can cut a cross-class path that avoids H*.
  if (!separates(paths, hs)) {
    for (std::size_t i = 0; i < paths.n(); ++i) {
      for (std::size_t j = i + 1; j < paths.n(); ++j) {
        if (paths.cls[i] != paths.cls[j] && (paths.path(i, j) & hs) == 0) return {};
      }
    }
  }
  std::vector<Mask> out;
  for (Mask s = hs;; s = (s - 1) & hs) {
    if (separates(paths, s)) out.push_back(s);
    if (s == 0) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

SeparatingSet to_set(const Paths& paths, Mask m) {
  SeparatingSet h;
  for (std::size_t e = 0; e < paths.edge_child.size(); ++e) {
    if (m >> e & 1) h.edges.push_back(paths.edge_child[e]);
  }
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

// Per ordered class pair: has an arc been seen, has its absence been seen.
struct PairTally {
  std::size_t k = 0;
  std::vector<char> present, absent;

  explicit PairTally(std::size_t classes) : k(classes), present(k * k, 0), absent(k * k, 0) {}

  void add(const Paths& paths, Mask h) {
    std::vector<signed char> arc(k * k, -1);
    for (std::size_t i = 0; i < paths.n(); ++i) {
      for (std::size_t j = 0; j < paths.n(); ++j) {
        const auto a = paths.cls[i];
        const auto b = paths.cls[j];
        if (a == b) continue;
        const signed char here = (paths.arc(i, j) & h) != 0;
        auto& slot = arc[a * k + b];
        if (slot == -1) {
          slot = here;
        } else if (slot != here) {
          throw std::logic_error("Fitch graph is not constant on a class pair");
        }
      }
    }
    for (std::size_t c = 0; c < k * k; ++c) {
      if (arc[c] == 1) present[c] = 1;
      if (arc[c] == 0) absent[c] = 1;
    }
  }

  bool saturated() const {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        if (a != b && !(present[a * k + b] && absent[a * k + b])) return false;
      }
    }
    return true;
  }

  std::vector<std::vector<PairClass>> result() const {
    std::vector<std::vector<PairClass>> out(k, std::vector<PairClass>(k, PairClass::kForbidden));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        if (a == b) continue;
        const bool p = present[a * k + b];
        const bool q = absent[a * k + b];
        out[a][b] = p && q ? PairClass::kAmbiguous : p ? PairClass::kEssential : PairClass::kForbidden;
      }
    }
    return out;
  }
};

LeafPartition widen(const LeafPartition& p, std::size_t n) {
  LeafPartition q = p;
  q.class_of.resize(n, kNoClass);
  return q;
}

// Calls `visit` on every refinement; stops early when it returns false.
void for_each_refinement(const RootedTree& tree, const OracleBudget& budget,
                         const std::function<bool(const RootedTree&)>& visit) {
  if (tree.leaves().size() > budget.max_leaves) {
    throw BudgetExceeded("tree has more than " + std::to_string(budget.max_leaves) + " leaves");
  }
  std::vector<Vertex> poly;
  std::map<std::size_t, std::vector<std::vector<int>>> shapes;
  std::size_t total = 1;
  for (Vertex v : tree.preorder()) {
    const auto k = tree.children(v).size();
    if (k <= 2) continue;
    if (k > budget.max_degree) {
      throw BudgetExceeded("vertex with " + std::to_string(k) + " children exceeds the degree budget");
    }
    poly.push_back(v);
    if (!shapes.count(k)) shapes[k] = rooted_trees_on(k);
    total *= shapes[k].size();
    if (total > budget.max_refinements) throw BudgetExceeded("too many refinements to enumerate");
  }

  std::vector<std::size_t> choice(poly.size(), 0);
  while (true) {
    auto nodes = tree.nodes();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vertex u = poly[i];
      const std::vector<Vertex> kids(nodes[u].children.begin(), nodes[u].children.end());
      const auto& par = shapes[kids.size()][choice[i]];
      std::vector<Vertex> map(par.size(), kNoVertex);
      for (std::size_t x = 0; x < par.size(); ++x) {
        if (x < kids.size()) {
          map[x] = kids[x];
        } else if (par[x] == -1) {
          map[x] = u;
        } else {
          map[x] = static_cast<Vertex>(nodes.size());
          nodes.emplace_back();
        }
      }
      for (Vertex m : map) {
        if (m == u || m >= static_cast<Vertex>(tree.size())) nodes[m].children.clear();
      }
      for (std::size_t x = 0; x < par.size(); ++x) {
        if (par[x] == -1) continue;
        nodes[map[x]].parent = map[par[x]];
        nodes[map[par[x]]].children.push_back(map[x]);
      }
    }
    if (!visit(RootedTree(std::move(nodes)))) return;

    std::size_t i = 0;
    while (i < poly.size() && ++choice[i] == shapes[tree.children(poly[i]).size()].size()) choice[i++] = 0;
    if (i == poly.size()) return;
  }
}

std::vector<Vertex> root_path(const RootedTree& tree, Vertex v) {
  std::vector<Vertex> out;
  for (; v != kNoVertex; v = tree.parent(v)) out.push_back(v);
  return out;
}

Vertex naive_lca(const RootedTree& tree, Vertex a, Vertex b) {
  const auto pa = root_path(tree, a);
  for (Vertex v = b; v != kNoVertex; v = tree.parent(v)) {
    if (std::find(pa.begin(), pa.end(), v) != pa.end()) return v;
  }
  return kNoVertex;
}

std::vector<char> leaves_below(const RootedTree& tree, Vertex u) {
  std::vector<char> in(tree.size(), 0);
  for (Vertex v : tree.preorder()) in[v] = v == u || (tree.parent(v) != kNoVertex && in[tree.parent(v)]);
  return in;
}

}  // namespace

SeparatingSet hstar(const RootedTree& tree, const LeafPartition& p) {
  const auto paths = make_paths(tree, p);
  return to_set(paths, hstar_mask(paths));
}

std::vector<SeparatingSet> enumerate_separating_sets(const RootedTree& tree, const LeafPartition& p,
                                                     const OracleBudget& budget) {
  check_size(tree, budget);
  const auto paths = make_paths(tree, p);
  std::vector<SeparatingSet> out;
  for (Mask m : separating_masks(paths)) out.push_back(to_set(paths, m));
  return out;
}

std::vector<EdgeClass> oracle_edge_classes(const RootedTree& tree, const LeafPartition& p,
                                           const OracleBudget& budget) {
  check_size(tree, budget);
  const auto paths = make_paths(tree, p);
  const auto sets = separating_masks(paths);
  if (sets.empty()) throw IncompatibleError("tree and partition are not compatible");
  Mask in_all = paths.all_edges;
  Mask in_some = 0;
  for (Mask m : sets) {
    in_all &= m;
    in_some |= m;
  }
  std::vector<EdgeClass> out(tree.size(), EdgeClass::kForbidden);
  for (std::size_t e = 0; e < paths.edge_child.size(); ++e) {
    const Vertex v = paths.edge_child[e];
    if (in_all >> e & 1) {
      out[v] = EdgeClass::kEssential;
    } else if (in_some >> e & 1) {
      out[v] = EdgeClass::kAmbiguous;
    }
  }
  return out;
}

std::vector<std::vector<PairClass>> oracle_pair_classes(const RootedTree& tree, const LeafPartition& p,
                                                        const OracleBudget& budget) {
  check_size(tree, budget);
  const auto paths = make_paths(tree, p);
  const auto sets = separating_masks(paths);
  if (sets.empty()) throw IncompatibleError("tree and partition are not compatible");
  PairTally tally(p.size());
  for (Mask m : sets) tally.add(paths, m);
  return tally.result();
}

std::vector<RootedTree> enumerate_compatible_refinements(const RootedTree& tree, const LeafPartition& p,
                                                         const OracleBudget& budget) {
  std::vector<RootedTree> out;
  for_each_refinement(tree, budget, [&](const RootedTree& t) {
    check_size(t, budget);
    if (!separating_masks(make_paths(t, widen(p, t.size()))).empty()) out.push_back(t);
    return true;
  });
  return out;
}

std::vector<std::vector<PairClass>> oracle_rpair_classes(const RootedTree& tree, const LeafPartition& p,
                                                         const OracleBudget& budget) {
  PairTally tally(p.size());
  bool any = false;
  for_each_refinement(tree, budget, [&](const RootedTree& t) {
    check_size(t, budget);
    const auto paths = make_paths(t, widen(p, t.size()));
    const auto sets = separating_masks(paths);
    if (sets.empty()) return true;
    any = true;
    for (Mask m : sets) {
      tally.add(paths, m);
      if (tally.saturated()) return false;
    }
    return true;
  });
  if (!any) throw IncompatibleError("tree and partition are not r-compatible");
  return tally.result();
}

bool compatible_by_closure(const RootedTree& tree, const LeafPartition& p) {
  std::vector<std::vector<char>> cl;
  for (const auto& cls : p.classes) {
    Vertex u = cls.front();
    for (Vertex x : cls) u = naive_lca(tree, u, x);
    cl.push_back(leaves_below(tree, u));
  }
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = 0; b < p.size(); ++b) {
      const auto inside = std::count_if(p.classes[b].begin(), p.classes[b].end(), [&](Vertex x) { return cl[a][x]; });
      if (inside != 0 && static_cast<std::size_t>(inside) != p.classes[b].size()) return false;
      if (a != b && cl[a] == cl[b]) return false;
    }
  }
  return true;
}

bool admits_uncolored_step(const RootedTree& tree, const LeafPartition& p) {
  const auto q = widen(p, tree.size());
  for (Vertex u : tree.preorder()) {
    const auto ch = tree.children(u);
    const auto k = ch.size();
    if (k < 3) continue;
    std::vector<std::vector<char>> below;
    for (Vertex c : ch) below.push_back(leaves_below(tree, c));
    for (std::uint32_t s = 0; s < (1u << k); ++s) {
      const auto size = std::popcount(s);
      if (size < 2 || static_cast<std::size_t>(size) >= k) continue;
      std::vector<char> in_w(tree.size(), 0);
      for (std::size_t i = 0; i < k; ++i) {
        if (!(s >> i & 1)) continue;
        for (std::size_t v = 0; v < tree.size(); ++v) in_w[v] = in_w[v] || below[i][v];
      }
      bool colored = false;
      for (const auto& cls : q.classes) {
        const auto inside = std::count_if(cls.begin(), cls.end(), [&](Vertex x) { return in_w[x]; });
        if (inside != 0 && static_cast<std::size_t>(inside) != cls.size()) colored = true;
      }
      if (!colored) return true;
    }
  }
  return false;
}

std::vector<std::vector<int>> rooted_trees_on(std::size_t k) {
  if (k == 0) return {};
  if (k == 1) return {{-1}};
  struct Small {
    std::vector<int> parent;
    std::vector<int> item;  // -1 for inner vertices
  };
  std::vector<Small> trees{{{2, 2, -1}, {0, 1, -1}}};
  for (int next = 2; next < static_cast<int>(k); ++next) {
    std::vector<Small> grown;
    for (const auto& t : trees) {
      const int size = static_cast<int>(t.parent.size());
      for (int x = 0; x < size; ++x) {
        if (t.item[x] == -1) {
          Small s = t;
          s.parent.push_back(x);
          s.item.push_back(next);
          grown.push_back(std::move(s));
        }
        Small s = t;
        const int y = size;
        s.parent.push_back(t.parent[x]);
        s.item.push_back(-1);
        s.parent[x] = y;
        s.parent.push_back(y);
        s.item.push_back(next);
        grown.push_back(std::move(s));
      }
    }
    trees = std::move(grown);
  }
  std::vector<std::vector<int>> out;
  for (const auto& t : trees) {
    std::vector<int> id(t.parent.size());
    int inner = static_cast<int>(k);
    for (std::size_t x = 0; x < t.parent.size(); ++x) id[x] = t.item[x] >= 0 ? t.item[x] : inner++;
    std::vector<int> par(t.parent.size());
    for (std::size_t x = 0; x < t.parent.size(); ++x) par[id[x]] = t.parent[x] == -1 ? -1 : id[t.parent[x]];
    out.push_back(std::move(par));
  }
  return out;
}

std::vector<RootedTree> all_shapes(std::size_t n) {
  std::vector<std::vector<std::string>> shapes(n + 1);
  if (n >= 1) shapes[1] = {"x"};
  for (std::size_t m = 2; m <= n; ++m) {
    std::set<std::string> seen;
    // Nonincreasing part lists with at least two parts.
    std::vector<std::size_t> parts;
    std::function<void(std::size_t, std::size_t)> split = [&](std::size_t rest, std::size_t cap) {
      if (rest == 0) {
        if (parts.size() < 2) return;
        std::vector<std::size_t> pick(parts.size(), 0);
        while (true) {
          std::vector<std::string> kids;
          for (std::size_t i = 0; i < parts.size(); ++i) kids.push_back(shapes[parts[i]][pick[i]]);
          std::sort(kids.begin(), kids.end());
          std::string s = "(";
          for (std::size_t i = 0; i < kids.size(); ++i) s += (i ? "," : "") + kids[i];
          seen.insert(s + ")");
          std::size_t i = 0;
          while (i < parts.size() && ++pick[i] == shapes[parts[i]].size()) pick[i++] = 0;
          if (i == parts.size()) break;
        }
        return;
      }
      for (std::size_t p = std::min(rest, cap); p >= 1; --p) {
        parts.push_back(p);
        split(rest - p, p);
        parts.pop_back();
      }
    };
    split(m, m);
    shapes[m].assign(seen.begin(), seen.end());
  }
  std::vector<RootedTree> out;
  if (n == 0) return out;
  for (const auto& s : shapes[n]) {
    std::string nwk;
    int leaf = 0;
    for (char c : s) nwk += c == 'x' ? "x" + std::to_string(leaf++) : std::string(1, c);
    out.push_back(parse_newick(nwk + ";"));
  }
  return out;
}

std::vector<std::vector<int>> all_set_partitions(std::size_t n) {
  std::vector<std::vector<int>> out;
  if (n == 0) return {{}};
  std::vector<int> rgs(n, 0);
  std::function<void(std::size_t, int)> go = [&](std::size_t i, int max) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (int b = 0; b <= max + 1; ++b) {
      rgs[i] = b;
      go(i + 1, std::max(max, b));
    }
  };
  rgs[0] = 0;
  go(1, 0);
  return out;
}

LeafPartition partition_of_leaves(const RootedTree& tree, const std::vector<int>& block) {
  const auto& leaves = tree.leaves();
  if (block.size() != leaves.size()) throw std::invalid_argument("block list does not match the leaf count");
  LeafPartition p;
  p.class_of.assign(tree.size(), kNoClass);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const auto b = static_cast<std::size_t>(block[i]);
    if (p.classes.size() <= b) p.classes.resize(b + 1);
    p.classes[b].push_back(leaves[i]);
    p.class_of[leaves[i]] = static_cast<ClassId>(b);
  }
  return p;
}

}  // namespace xeno::oracle
