#include <doctest.h>

#include <random>

#include "support.hpp"
#include "xeno/tree.hpp"

using namespace xeno;
using namespace xeno::test;

TEST_CASE("parse the smallest tree") {
  const auto t = parse_newick("(a,b)R;");
  CHECK(t.size() == 3);
  CHECK(t.label(t.root()) == "R");
  REQUIRE(t.children(t.root()).size() == 2);
  CHECK(t.label(t.children(t.root())[0]) == "a");
  CHECK(t.label(t.children(t.root())[1]) == "b");
}

TEST_CASE("parse fixture trees") {
  const auto c = parse_newick(kTreeC);
  CHECK(c.size() == 7);
  CHECK(c.leaf_count() == 4);
  CHECK(c.parent(at(c, "Y")) == at(c, "Z"));
  CHECK(c.parent(at(c, "a'")) == c.root());
  // Indices follow input order.
  CHECK(at(c, "R") == 0);
  CHECK(at(c, "Z") == 1);
  CHECK(at(c, "Y") == 2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_newick("(a,a);"), ParseError);
  CHECK_THROWS_AS(parse_newick(""), ParseError);
  CHECK_THROWS_AS(parse_newick("   "), ParseError);
  CHECK_THROWS_AS(parse_newick("((a)X,b);"), ParseError);
  CHECK_THROWS_AS(parse_newick("(a,b)"), ParseError);
  CHECK_THROWS_AS(parse_newick("(a,b);x"), ParseError);
  CHECK_THROWS_AS(parse_newick("(a,(b,c);"), ParseError);
  CHECK_THROWS_AS(parse_newick("(a,);"), ParseError);
  CHECK_THROWS_AS(parse_newick("(a,b:x);"), ParseError);
  try {
    parse_newick("(a,b,a);");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
}

TEST_CASE("branch lengths and whitespace are ignored") {
  const auto t = parse_newick(" ( a:0.5 , b:1e-3 ) R:2 ;\n");
  CHECK(write_newick(t) == "(a,b)R;");
}

TEST_CASE("a single leaf is a tree") {
  const auto t = parse_newick("a;");
  CHECK(t.size() == 1);
  CHECK(t.is_leaf(t.root()));
  CHECK(write_newick(t) == "a;");
}

TEST_CASE("write newick") {
  CHECK(write_newick(parse_newick("(a,b)R;")) == "(a,b)R;");
  CHECK(write_newick(parse_newick(kTreeC)) == kTreeC);
  CHECK(write_newick(parse_newick("((a,b),c);")) == "((a,b),c);");
}

TEST_CASE("newick round trip on random trees") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto n = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    const auto t = random_tree(n, rng, 1 + i % 5 + 1);
    const auto back = parse_newick(write_newick(t));
    CHECK(clusters(back) == clusters(t));
    CHECK(write_newick(back) == write_newick(t));
    // Parsing renumbers in preorder; a second trip is the identity.
    CHECK(parse_newick(write_newick(back)) == back);
  }
}

TEST_CASE("deep caterpillar survives parse and write") {
  const auto t = caterpillar(100000);
  const auto text = write_newick(t);
  const auto back = parse_newick(text);
  CHECK(back.leaf_count() == 100000);
  CHECK(write_newick(back) == text);
}

TEST_CASE("clusters") {
  const std::set<Cluster> c = {{"b"}, {"b'"}, {"a"}, {"a'"}, {"b", "b'"}, {"a", "b", "b'"}, {"a", "a'", "b", "b'"}};
  CHECK(clusters(parse_newick(kTreeC)) == c);
  CHECK(clusters(parse_newick("(a,b)R;")) == std::set<Cluster>{{"a"}, {"b"}, {"a", "b"}});
  CHECK(clusters(parse_newick("(a,b,c)R;")) == std::set<Cluster>{{"a"}, {"b"}, {"c"}, {"a", "b", "c"}});
}

TEST_CASE("clusters form a hierarchy") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto t = random_tree(std::uniform_int_distribution<std::size_t>(1, 30)(rng), rng, 4);
    const auto h = clusters(t);
    Cluster all;
    for (Vertex v : t.leaves()) {
      all.insert(t.label(v));
      CHECK(h.count({t.label(v)}) == 1);
    }
    CHECK(h.count(all) == 1);
    for (const auto& a : h) {
      for (const auto& b : h) {
        Cluster meet;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(meet, meet.end()));
        CHECK((meet.empty() || meet == a || meet == b));
      }
    }
  }
}

TEST_CASE("is_refinement") {
  const auto q = parse_newick(kTreeQ);
  const auto m = parse_newick(kTreeM);
  const auto c = parse_newick(kTreeC);
  CHECK(is_refinement(q, m));
  CHECK_FALSE(is_refinement(m, q));
  CHECK_FALSE(is_refinement(q, c));
  CHECK(is_refinement(c, c));
  CHECK_THROWS_AS(is_refinement(q, parse_newick("(a,b)R;")), InputError);
}

TEST_CASE("contract_edges") {
  const auto c = parse_newick(kTreeC);
  const std::vector<Vertex> z{at(c, "Z")};
  CHECK(write_newick(contract_edges(c, z)) == kTreeM);
  CHECK(contract_edges(c, {}) == c);
  const std::vector<Vertex> leaf{at(c, "a")};
  CHECK_THROWS_AS(contract_edges(c, leaf), InputError);
  const std::vector<Vertex> root{c.root()};
  CHECK_THROWS_AS(contract_edges(c, root), InputError);
  const std::vector<Vertex> both{at(c, "Z"), at(c, "Y")};
  CHECK(write_newick(contract_edges(c, both)) == "(b,b',a,a')R;");
}

TEST_CASE("contraction yields a coarser tree") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const auto t = random_tree(std::uniform_int_distribution<std::size_t>(2, 30)(rng), rng, 3);
    std::vector<Vertex> cut;
    for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
      if (v != t.root() && !t.is_leaf(v) && rng() % 2) cut.push_back(v);
    }
    const auto m = contract_edges(t, cut);
    CHECK(is_refinement(t, m));
    CHECK(m.size() == t.size() - cut.size());
  }
}

TEST_CASE("resolve and vertex_id") {
  const auto t = parse_newick("((a,b),(c,d)X,(e,f)X)R;");
  CHECK(t.label(t.resolve("a")) == "a");
  CHECK(t.resolve("R") == t.root());
  CHECK_THROWS_AS(t.resolve("X"), InputError);  // inner label used twice
  CHECK_THROWS_AS(t.resolve("nope"), InputError);
  CHECK_THROWS_AS(t.resolve("@99"), InputError);
  const Vertex unnamed = t.children(t.root())[0];
  CHECK(t.vertex_id(unnamed) == "@1");
  CHECK(t.resolve("@1") == unnamed);
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) CHECK(t.resolve(t.vertex_id(v)) == v);
}

TEST_CASE("constructor rejects malformed node tables") {
  using N = RootedTree::Node;
  CHECK_THROWS_AS(RootedTree({}), InputError);
  // Two roots.
  CHECK_THROWS_AS(RootedTree({N{kNoVertex, {}, "a"}, N{kNoVertex, {}, "b"}}), InputError);
  // Single child.
  CHECK_THROWS_AS(RootedTree({N{kNoVertex, {1}, ""}, N{0, {}, "a"}}), InputError);
  // Parent link disagrees with child list.
  CHECK_THROWS_AS(RootedTree({N{kNoVertex, {1, 2}, ""}, N{0, {}, "a"}, N{1, {}, "b"}}), InputError);
  // Unlabeled leaf.
  CHECK_THROWS_AS(RootedTree({N{kNoVertex, {1, 2}, ""}, N{0, {}, "a"}, N{0, {}, ""}}), InputError);
  // Cycle detached from the root.
  CHECK_THROWS_AS(RootedTree({N{kNoVertex, {1, 2}, ""}, N{0, {}, "a"}, N{0, {}, "b"}, N{4, {4}, ""}, N{3, {3}, ""}}),
                  InputError);
}
