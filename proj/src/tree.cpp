#include "xeno/tree.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

namespace xeno {

ParseError::ParseError(const std::string& what, std::size_t position)
    : InputError(what + " at position " + std::to_string(position)), position_(position) {}

RootedTree::RootedTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  const auto n = nodes_.size();
  if (n == 0) throw InputError("empty tree");
  std::vector<int> seen_as_child(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const Node& node = nodes_[v];
    if (node.parent == kNoVertex) {
      if (root_ != kNoVertex) throw InputError("tree has more than one root");
      root_ = static_cast<Vertex>(v);
    } else if (!contains(node.parent)) {
      throw InputError("parent index out of range");
    }
    if (node.children.size() == 1) {
      throw InputError("vertex " + std::to_string(v) + " has a single child");
    }
    for (Vertex c : node.children) {
      if (!contains(c) || nodes_[c].parent != static_cast<Vertex>(v)) {
        throw InputError("inconsistent parent/child links at vertex " + std::to_string(v));
      }
      ++seen_as_child[c];
    }
  }
  if (root_ == kNoVertex) throw InputError("tree has no root");
  for (std::size_t v = 0; v < n; ++v) {
    if (static_cast<Vertex>(v) != root_ && seen_as_child[v] != 1) {
      throw InputError("vertex " + std::to_string(v) + " is not listed exactly once as a child");
    }
  }

  preorder_.reserve(n);
  preorder_index_.assign(n, 0);
  std::vector<Vertex> stack{root_};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    preorder_index_[v] = preorder_.size();
    preorder_.push_back(v);
    if (preorder_.size() > n) throw InputError("tree contains a cycle");
    const auto& ch = nodes_[v].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  if (preorder_.size() != n) throw InputError("tree is not connected");

  for (Vertex v : preorder_) {
    if (!is_leaf(v)) continue;
    const std::string& l = nodes_[v].label;
    if (l.empty()) throw InputError("leaf without label");
    if (!leaf_by_label_.emplace(l, v).second) throw InputError("duplicate leaf label '" + l + "'");
    leaves_.push_back(v);
  }
}

std::optional<Vertex> RootedTree::find_leaf(std::string_view label) const {
  auto it = leaf_by_label_.find(std::string(label));
  if (it == leaf_by_label_.end()) return std::nullopt;
  return it->second;
}

Vertex RootedTree::resolve(std::string_view id) const {
  if (!id.empty() && id.front() == '@') {
    std::size_t k = 0;
    const auto* first = id.data() + 1;
    const auto* last = id.data() + id.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec != std::errc() || ptr != last || first == last || k >= size()) {
      throw InputError("bad vertex address '" + std::string(id) + "'");
    }
    return preorder_[k];
  }
  if (auto leaf = find_leaf(id)) return *leaf;
  Vertex found = kNoVertex;
  for (std::size_t v = 0; v < size(); ++v) {
    if (nodes_[v].label == id) {
      if (found != kNoVertex) throw InputError("ambiguous vertex label '" + std::string(id) + "'");
      found = static_cast<Vertex>(v);
    }
  }
  if (found == kNoVertex) throw InputError("unknown vertex '" + std::string(id) + "'");
  return found;
}

std::string RootedTree::vertex_id(Vertex v) const {
  const std::string& l = nodes_[v].label;
  if (is_leaf(v)) return l;
  if (!l.empty() && !leaf_by_label_.contains(l)) {
    const auto same = std::count_if(nodes_.begin(), nodes_.end(),
                                    [&](const Node& node) { return node.label == l; });
    if (same == 1) return l;
  }
  return "@" + std::to_string(preorder_index_[v]);
}

bool operator==(const RootedTree& a, const RootedTree& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::pair<Vertex, Vertex>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    auto [u, v] = stack.back();
    stack.pop_back();
    if (a.label(u) != b.label(v)) return false;
    auto cu = a.children(u);
    auto cv = b.children(v);
    if (cu.size() != cv.size()) return false;
    for (std::size_t i = 0; i < cu.size(); ++i) stack.emplace_back(cu[i], cv[i]);
  }
  return true;
}

namespace {

bool is_label_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '.' || c == '|' || c == '-' || c == '\'';
}

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  RootedTree parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty tree", pos_);
    std::vector<RootedTree::Node> nodes;
    std::vector<Vertex> open;
    std::unordered_map<std::string, std::size_t> leaf_pos;

    auto add_node = [&](std::string label) {
      const auto v = static_cast<Vertex>(nodes.size());
      RootedTree::Node node;
      node.parent = open.empty() ? kNoVertex : open.back();
      node.label = std::move(label);
      if (!open.empty()) nodes[open.back()].children.push_back(v);
      nodes.push_back(std::move(node));
      return v;
    };

    while (true) {
      // Start of a subtree.
      skip_ws();
      if (peek() == '(') {
        if (!open.empty() || nodes.empty()) {
          open.push_back(add_node({}));
          ++pos_;
          continue;
        }
        throw ParseError("unexpected '('", pos_);
      }
      const auto label_pos = pos_;
      std::string label = read_label();
      if (label.empty()) throw ParseError("expected '(' or label", pos_);
      if (!nodes.empty() && open.empty()) throw ParseError("unexpected label", label_pos);
      if (!leaf_pos.emplace(label, label_pos).second) {
        throw ParseError("duplicate leaf label '" + label + "'", label_pos);
      }
      add_node(std::move(label));
      skip_branch_length();

      // Close as many subtrees as the input closes here.
      while (true) {
        skip_ws();
        if (open.empty()) {
          if (peek() != ';') throw ParseError("expected ';'", pos_);
          ++pos_;
          skip_ws();
          if (!at_end()) throw ParseError("trailing characters after ';'", pos_);
          return RootedTree(std::move(nodes));
        }
        if (peek() == ',') {
          ++pos_;
          break;
        }
        if (peek() == ')') {
          const Vertex v = open.back();
          if (nodes[v].children.size() < 2) {
            throw ParseError("inner vertex with a single child", pos_);
          }
          open.pop_back();
          ++pos_;
          skip_ws();
          nodes[v].label = read_label();
          skip_branch_length();
          continue;
        }
        throw ParseError(at_end() ? "unexpected end of input" : "expected ',' or ')'", pos_);
      }
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                         text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  std::string read_label() {
    const auto start = pos_;
    while (!at_end() && is_label_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_branch_length() {
    skip_ws();
    if (peek() != ':') return;
    ++pos_;
    skip_ws();
    const auto start = pos_;
    double value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) throw ParseError("bad branch length", start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RootedTree parse_newick(std::string_view text) { return NewickParser(text).parse(); }

std::string write_newick(const RootedTree& tree) {
  std::string out;
  // (vertex, index of next child to emit)
  std::vector<std::pair<Vertex, std::size_t>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (tree.is_leaf(v)) {
      out += tree.label(v);
      stack.pop_back();
      continue;
    }
    auto ch = tree.children(v);
    if (next == 0) out += '(';
    if (next < ch.size()) {
      if (next > 0) out += ',';
      const Vertex c = ch[next++];
      stack.emplace_back(c, 0);
      continue;
    }
    out += ')';
    out += tree.label(v);
    stack.pop_back();
  }
  out += ';';
  return out;
}

std::set<Cluster> clusters(const RootedTree& tree) {
  std::vector<Cluster> below(tree.size());
  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (tree.is_leaf(v)) {
      below[v].insert(tree.label(v));
    } else {
      for (Vertex c : tree.children(v)) below[v].insert(below[c].begin(), below[c].end());
    }
  }
  return {below.begin(), below.end()};
}

bool is_refinement(const RootedTree& candidate, const RootedTree& base) {
  const auto fine = clusters(candidate);
  const auto coarse = clusters(base);
  Cluster fine_leaves;
  Cluster coarse_leaves;
  for (Vertex v : candidate.leaves()) fine_leaves.insert(candidate.label(v));
  for (Vertex v : base.leaves()) coarse_leaves.insert(base.label(v));
  if (fine_leaves != coarse_leaves) throw InputError("trees have different leaf sets");
  return std::includes(fine.begin(), fine.end(), coarse.begin(), coarse.end());
}

RootedTree contract_edges(const RootedTree& tree, std::span<const Vertex> edges) {
  std::vector<char> contracted(tree.size(), 0);
  for (Vertex v : edges) {
    if (!tree.contains(v)) throw InputError("edge key out of range");
    if (v == tree.root()) throw InputError("the root is not the child of an edge");
    if (tree.is_leaf(v)) throw InputError("cannot contract leaf edge at '" + tree.label(v) + "'");
    contracted[v] = 1;
  }

  std::vector<Vertex> new_index(tree.size(), kNoVertex);
  Vertex next = 0;
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (!contracted[v]) new_index[v] = next++;
  }

  std::vector<RootedTree::Node> nodes(static_cast<std::size_t>(next));
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (contracted[v]) continue;
    auto& node = nodes[new_index[v]];
    node.label = tree.label(static_cast<Vertex>(v));
    Vertex p = tree.parent(static_cast<Vertex>(v));
    while (p != kNoVertex && contracted[p]) p = tree.parent(p);
    node.parent = p == kNoVertex ? kNoVertex : new_index[p];

    // Expand contracted children in place, preserving order.
    std::vector<Vertex> stack(tree.children(static_cast<Vertex>(v)).rbegin(),
                              tree.children(static_cast<Vertex>(v)).rend());
    while (!stack.empty()) {
      const Vertex c = stack.back();
      stack.pop_back();
      if (contracted[c]) {
        auto cc = tree.children(c);
        for (auto it = cc.rbegin(); it != cc.rend(); ++it) stack.push_back(*it);
      } else {
        node.children.push_back(new_index[c]);
      }
    }
  }
  return RootedTree(std::move(nodes));
}

}  // namespace xeno
