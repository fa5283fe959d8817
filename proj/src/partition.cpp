#include "xeno/partition.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace xeno {

std::string Partition::name(ClassId id) const {
  if (static_cast<std::size_t>(id) < names.size() && !names[id].empty()) return names[id];
  return std::to_string(id);
}

Partition parse_partition(std::string_view text) {
  Partition p;
  bool any_name = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == '\t' || line[i] == ' ')) ++i;
      const auto start = i;
      while (i < line.size() && line[i] != '\t' && line[i] != ' ') ++i;
      if (i > start) fields.emplace_back(line.substr(start, i - start));
    }
    if (fields.empty() || fields.front().front() == '#') continue;

    std::string name;
    if (fields.front().back() == ':') {
      name = fields.front().substr(0, fields.front().size() - 1);
      if (name.empty()) throw InputError("empty class name on line " + std::to_string(line_no));
      fields.erase(fields.begin());
      any_name = true;
    }
    p.classes.push_back(std::move(fields));
    p.names.push_back(std::move(name));
  }
  if (!any_name) p.names.clear();
  return p;
}

std::string write_partition(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    if (i < p.names.size() && !p.names[i].empty()) out += p.names[i] + ":\t";
    for (std::size_t j = 0; j < p.classes[i].size(); ++j) {
      if (j > 0) out += '\t';
      out += p.classes[i][j];
    }
    out += '\n';
  }
  return out;
}

bool equivalent(const Partition& a, const Partition& b) {
  auto canon = [](const Partition& p) {
    std::set<std::set<std::string>> s;
    for (const auto& c : p.classes) s.emplace(c.begin(), c.end());
    return s;
  };
  return a.classes.size() == b.classes.size() && canon(a) == canon(b);
}

std::optional<PartitionViolation> validate_partition(const Partition& p, const RootedTree& tree) {
  using Axiom = PartitionViolation::Axiom;
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    if (p.classes[i].empty()) {
      return PartitionViolation{Axiom::kEmptyClass, "(P0) class " + p.name(static_cast<ClassId>(i)) + " is empty"};
    }
  }
  std::unordered_map<std::string_view, std::size_t> owner;
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    for (const auto& label : p.classes[i]) {
      auto [it, fresh] = owner.emplace(label, i);
      if (!fresh) {
        return PartitionViolation{Axiom::kNotDisjoint, "(P2) leaf '" + label + "' appears in class " +
                                                            p.name(static_cast<ClassId>(it->second)) +
                                                            " and class " + p.name(static_cast<ClassId>(i))};
      }
    }
  }
  for (const auto& [label, cls] : owner) {
    if (!tree.find_leaf(label)) {
      return PartitionViolation{Axiom::kNotCovering, "(P1) '" + std::string(label) + "' in class " +
                                                          p.name(static_cast<ClassId>(cls)) +
                                                          " is not a leaf of the tree"};
    }
  }
  for (Vertex v : tree.leaves()) {
    if (!owner.contains(tree.label(v))) {
      return PartitionViolation{Axiom::kNotCovering, "(P1) leaf '" + tree.label(v) + "' is not covered"};
    }
  }
  return std::nullopt;
}

LeafPartition bind_partition(const RootedTree& tree, const Partition& p) {
  if (auto violation = validate_partition(p, tree)) throw InputError(violation->message);
  LeafPartition out;
  out.class_of.assign(tree.size(), kNoClass);
  out.classes.resize(p.classes.size());
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    for (const auto& label : p.classes[i]) {
      const Vertex v = *tree.find_leaf(label);
      out.classes[i].push_back(v);
      out.class_of[v] = static_cast<ClassId>(i);
    }
  }
  return out;
}

Partition to_labels(const RootedTree& tree, const LeafPartition& p, const std::vector<std::string>& names) {
  Partition out;
  out.names = names;
  for (const auto& cls : p.classes) {
    auto& labels = out.classes.emplace_back();
    for (Vertex v : cls) labels.push_back(tree.label(v));
  }
  return out;
}

bool same_partition(const LeafPartition& a, const LeafPartition& b) {
  if (a.size() != b.size() || a.class_of.size() != b.class_of.size()) return false;
  std::vector<ClassId> map_ab(a.size(), kNoClass);
  std::vector<ClassId> map_ba(b.size(), kNoClass);
  for (std::size_t v = 0; v < a.class_of.size(); ++v) {
    const ClassId x = a.class_of[v];
    const ClassId y = b.class_of[v];
    if ((x == kNoClass) != (y == kNoClass)) return false;
    if (x == kNoClass) continue;
    if (map_ab[x] == kNoClass && map_ba[y] == kNoClass) {
      map_ab[x] = y;
      map_ba[y] = x;
    } else if (map_ab[x] != y || map_ba[y] != x) {
      return false;
    }
  }
  return true;
}

LeafPartition rebind(const LeafPartition& p, const RootedTree& from, const RootedTree& to) {
  LeafPartition out;
  out.class_of.assign(to.size(), kNoClass);
  out.classes.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (Vertex v : p.classes[i]) {
      auto w = to.find_leaf(from.label(v));
      if (!w) throw InputError("leaf '" + from.label(v) + "' missing from target tree");
      out.classes[i].push_back(*w);
      out.class_of[*w] = static_cast<ClassId>(i);
    }
  }
  return out;
}

namespace {

std::vector<Vertex> fold_class_lcas(const AncestryIndex& index, const LeafPartition& p) {
  std::vector<Vertex> lcas(p.size(), kNoVertex);
  for (std::size_t a = 0; a < p.size(); ++a) {
    Vertex cur = p.classes[a].front();
    for (Vertex x : p.classes[a]) cur = index.lca_unchecked(cur, x);
    lcas[a] = cur;
  }
  return lcas;
}

}  // namespace

VertexColoring vertex_coloring(const RootedTree& tree, const AncestryIndex& index, const LeafPartition& p) {
  VertexColoring out;
  out.color.assign(tree.size(), kNoClass);
  out.class_lca.assign(p.size(), kNoVertex);

  // Colors v, parent(v), ... until reaching an already-colored vertex or
  // `stop`. Returns false on a color collision.
  auto walk = [&](Vertex v, Vertex stop, ClassId a) {
    while (true) {
      const ClassId c = out.color[v];
      if (c == a) return true;
      if (c != kNoClass) return false;
      out.color[v] = a;
      if (v == stop) return true;
      v = tree.parent(v);
    }
  };

  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto a = static_cast<ClassId>(i);
    const auto& members = p.classes[i];
    Vertex cur = members.front();
    bool ok = walk(cur, cur, a);
    for (std::size_t j = 1; ok && j < members.size(); ++j) {
      const Vertex x = members[j];
      const Vertex next = index.lca_unchecked(x, cur);
      ok = walk(x, next, a);
      // The running LCA itself is already colored; continue from its parent.
      if (ok && cur != next) ok = walk(tree.parent(cur), next, a);
      cur = next;
    }
    if (!ok) {
      out.compatible = false;
      out.class_lca = fold_class_lcas(index, p);
      return out;
    }
    out.class_lca[i] = cur;
  }
  out.compatible = true;
  return out;
}

VertexColoring vertex_coloring(const RootedTree& tree, const LeafPartition& p) {
  return vertex_coloring(tree, AncestryIndex(tree), p);
}

EdgeColoring edge_coloring(const RootedTree& tree, const AncestryIndex& index, const LeafPartition& p) {
  EdgeColoring out;
  out.color.assign(tree.size(), kNoClass);
  out.class_lca = fold_class_lcas(index, p);
  out.r_compatible = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto a = static_cast<ClassId>(i);
    const Vertex top = out.class_lca[i];
    for (Vertex x : p.classes[i]) {
      for (Vertex v = x; v != top; v = tree.parent(v)) {
        const ClassId c = out.color[v];
        if (c == a) break;
        if (c != kNoClass) {
          out.r_compatible = false;
          return out;
        }
        out.color[v] = a;
      }
    }
  }
  return out;
}

EdgeColoring edge_coloring(const RootedTree& tree, const LeafPartition& p) {
  return edge_coloring(tree, AncestryIndex(tree), p);
}

}  // namespace xeno
