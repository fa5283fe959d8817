#include "xeno/separating.hpp"

#include <algorithm>
#include <numeric>

namespace xeno {

bool SeparatingSet::contains(Vertex child) const {
  return std::binary_search(edges.begin(), edges.end(), child);
}

std::vector<char> SeparatingSet::mask(std::size_t n) const {
  std::vector<char> m(n, 0);
  for (Vertex v : edges) m[v] = 1;
  return m;
}

SeparatingSet SeparatingSet::from_mask(std::span<const char> mask) {
  SeparatingSet h;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) h.edges.push_back(static_cast<Vertex>(v));
  }
  return h;
}

std::string_view to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::kEssential:
      return "essential";
    case EdgeClass::kForbidden:
      return "forbidden";
    case EdgeClass::kAmbiguous:
      return "ambiguous";
  }
  return "?";
}

SeparatingSet maximal_separating_set(const RootedTree& tree, const VertexColoring& coloring) {
  if (!coloring.compatible) throw IncompatibleError("tree and partition are not compatible");
  SeparatingSet h;
  for (std::size_t v = 0; v < tree.size(); ++v) {
    const Vertex p = tree.parent(static_cast<Vertex>(v));
    if (p == kNoVertex) continue;
    const ClassId a = coloring.color[v];
    if (a == kNoClass || a != coloring.color[p]) h.edges.push_back(static_cast<Vertex>(v));
  }
  return h;
}

LeafPartition induced_partition(const RootedTree& tree, const SeparatingSet& h) {
  const auto cut = h.mask(tree.size());
  // Each component of T - H has a unique highest vertex; label top-down.
  std::vector<Vertex> top(tree.size(), kNoVertex);
  std::vector<ClassId> class_of_top(tree.size(), kNoClass);
  LeafPartition out;
  out.class_of.assign(tree.size(), kNoClass);
  for (Vertex v : tree.preorder()) {
    top[v] = (v == tree.root() || cut[v]) ? v : top[tree.parent(v)];
    if (!tree.is_leaf(v)) continue;
    ClassId& id = class_of_top[top[v]];
    if (id == kNoClass) {
      id = static_cast<ClassId>(out.classes.size());
      out.classes.emplace_back();
    }
    out.classes[id].push_back(v);
    out.class_of[v] = id;
  }
  return out;
}

bool is_separating(const RootedTree& tree, const LeafPartition& p, const SeparatingSet& h) {
  return same_partition(induced_partition(tree, h), p);
}

std::vector<EdgeClass> classify_tree_edges(const RootedTree& tree, const VertexColoring& coloring) {
  if (!coloring.compatible) throw IncompatibleError("tree and partition are not compatible");
  std::vector<EdgeClass> out(tree.size(), EdgeClass::kForbidden);
  for (std::size_t v = 0; v < tree.size(); ++v) {
    const Vertex p = tree.parent(static_cast<Vertex>(v));
    if (p == kNoVertex) continue;
    const ClassId below = coloring.color[v];
    const ClassId above = coloring.color[p];
    if (below != kNoClass && above != kNoClass) {
      out[v] = below == above ? EdgeClass::kForbidden : EdgeClass::kEssential;
    } else {
      out[v] = EdgeClass::kAmbiguous;
    }
  }
  return out;
}

std::vector<HStarComponent> hstar_components(const RootedTree& tree, const VertexColoring& coloring,
                                             const SeparatingSet& hstar) {
  if (!coloring.compatible) throw IncompatibleError("tree and partition are not compatible");
  const auto& color = coloring.color;
  std::vector<int> comp_of(tree.size(), -1);  // for uncolored vertices
  std::vector<HStarComponent> comps;

  auto open_component = [&](Vertex top, bool planted) {
    HStarComponent c;
    c.top = top;
    c.planted = planted;
    comps.push_back(std::move(c));
    return static_cast<int>(comps.size() - 1);
  };

  const auto in_hstar = hstar.mask(tree.size());
  std::vector<int> comp_of_edge(tree.size(), -1);
  for (Vertex v : tree.preorder()) {
    const Vertex p = tree.parent(v);
    if (color[v] == kNoClass) {
      if (p != kNoVertex && color[p] == kNoClass) {
        comp_of[v] = comp_of[p];
      } else {
        comp_of[v] = open_component(p == kNoVertex ? v : p, p == kNoVertex);
      }
    }
    if (p == kNoVertex || !in_hstar[v]) continue;
    if (color[v] == kNoClass) {
      comp_of_edge[v] = comp_of[v];
    } else if (color[p] == kNoClass) {
      comp_of_edge[v] = comp_of[p];
    } else {
      comp_of_edge[v] = open_component(p, false);
    }
  }

  for (Vertex v : tree.preorder()) {
    if (comp_of_edge[v] >= 0) comps[comp_of_edge[v]].edges.push_back(v);
  }
  std::vector<HStarComponent> out;
  for (auto& c : comps) {
    if (c.edges.empty()) continue;
    std::vector<Vertex> verts{c.top};
    for (Vertex v : c.edges) verts.push_back(v);
    std::sort(verts.begin(), verts.end(),
              [&](Vertex a, Vertex b) { return tree.preorder_index(a) < tree.preorder_index(b); });
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    c.vertices = verts;
    for (Vertex v : verts) {
      if (color[v] != kNoClass && !(v == c.top && !c.planted)) c.leaves.push_back(v);
    }
    std::sort(c.edges.begin(), c.edges.end());
    out.push_back(std::move(c));
  }
  return out;
}

bool separates_component(const RootedTree& tree, const HStarComponent& component, const SeparatingSet& h) {
  // Union-find over the component's vertices, joining across uncut edges.
  std::vector<std::size_t> parent(component.vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto index_of = [&](Vertex v) {
    return static_cast<std::size_t>(
        std::find(component.vertices.begin(), component.vertices.end(), v) - component.vertices.begin());
  };
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Vertex e : component.edges) {
    if (h.contains(e)) continue;
    parent[find(index_of(e))] = find(index_of(tree.parent(e)));
  }
  std::vector<Vertex> terminals = component.leaves;
  if (!component.planted) terminals.push_back(component.top);
  std::vector<std::size_t> roots;
  for (Vertex t : terminals) roots.push_back(find(index_of(t)));
  std::sort(roots.begin(), roots.end());
  return std::adjacent_find(roots.begin(), roots.end()) == roots.end();
}

SeparatingSet parse_separating_set(const RootedTree& tree, std::string_view text) {
  SeparatingSet h;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    const Vertex v = tree.resolve(line);
    if (v == tree.root()) throw InputError("the root does not identify an edge");
    h.edges.push_back(v);
  }
  std::sort(h.edges.begin(), h.edges.end());
  h.edges.erase(std::unique(h.edges.begin(), h.edges.end()), h.edges.end());
  return h;
}

std::string write_separating_set(const RootedTree& tree, const SeparatingSet& h) {
  std::string out;
  for (Vertex v : h.edges) out += tree.vertex_id(v) + '\n';
  return out;
}

}  // namespace xeno
