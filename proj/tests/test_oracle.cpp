#include <doctest.h>

#include "support.hpp"
#include "xeno/oracle.hpp"

using namespace xeno;
using namespace xeno::test;

TEST_CASE("separating set enumeration on fixtures") {
  const auto q = parse_newick(kTreeQ);
  const auto sq = oracle::enumerate_separating_sets(q, bind(q, kP2));
  CHECK(sq.size() == 3);
  for (const auto& want : {edges(q, {"X"}), edges(q, {"Y"}), edges(q, {"X", "Y"})}) {
    CHECK(std::find(sq.begin(), sq.end(), want) != sq.end());
  }
  const auto c = parse_newick(kTreeC);
  const auto sc = oracle::enumerate_separating_sets(c, bind(c, kP2));
  REQUIRE(sc.size() == 1);
  CHECK(sc[0] == edges(c, {"Y"}));
  const auto x = parse_newick(kTreeX);
  CHECK(oracle::enumerate_separating_sets(x, bind(x, kP2)).empty());
  CHECK_THROWS_AS(oracle::oracle_edge_classes(x, bind(x, kP2)), IncompatibleError);
}

TEST_CASE("oracle edge and pair classes on fixtures") {
  const auto c = parse_newick(kTreeC);
  const auto ec = oracle::oracle_edge_classes(c, bind(c, kP2));
  CHECK(ec[at(c, "Y")] == EdgeClass::kEssential);
  CHECK(ec[at(c, "Z")] == EdgeClass::kForbidden);
  CHECK(ec[c.root()] == EdgeClass::kForbidden);
  const auto pc = oracle::oracle_pair_classes(c, bind(c, kP2));
  CHECK(pc[0][1] == PairClass::kEssential);
  CHECK(pc[1][0] == PairClass::kForbidden);

  const auto q = parse_newick(kTreeQ);
  const auto pq = oracle::oracle_pair_classes(q, bind(q, kP2));
  CHECK(pq[0][1] == PairClass::kAmbiguous);
  CHECK(pq[1][0] == PairClass::kAmbiguous);
  CHECK(oracle::oracle_pair_classes(q, bind(q, "a a' b b'\n")).size() == 1);
}

TEST_CASE("compatible refinements on fixtures") {
  const auto p = parse_newick(kTreeP);
  const auto rp = oracle::enumerate_compatible_refinements(p, bind(p, kP2));
  REQUIRE(rp.size() == 1);
  CHECK(clusters(rp[0]) == clusters(parse_newick("(((a,a')W,b)U,b')R;")));

  const auto m = parse_newick(kTreeM);
  const auto rm = oracle::enumerate_compatible_refinements(m, bind(m, kP2));
  // Grouping Y with a or a' gives a copy of TREE_C, which is compatible too.
  REQUIRE(rm.size() == 4);
  std::set<std::set<Cluster>> got;
  for (const auto& t : rm) got.insert(clusters(t));
  CHECK(got == std::set<std::set<Cluster>>{clusters(m), clusters(parse_newick(kTreeQ)), clusters(parse_newick(kTreeC)),
                                           clusters(parse_newick("(((b,b')Y,a'),a)R;"))});

  const auto x = parse_newick(kTreeX);
  CHECK(oracle::enumerate_compatible_refinements(x, bind(x, kP2)).empty());
  CHECK_THROWS_AS(oracle::oracle_rpair_classes(x, bind(x, kP2)), IncompatibleError);

  const auto r = oracle::oracle_rpair_classes(p, bind(p, kP2));
  CHECK(r[1][0] == PairClass::kEssential);
  CHECK(r[0][1] == PairClass::kForbidden);
  const auto rmc = oracle::oracle_rpair_classes(m, bind(m, kP2));
  CHECK(rmc[0][1] == PairClass::kAmbiguous);
  CHECK(rmc[1][0] == PairClass::kAmbiguous);
}

TEST_CASE("enumeration counts") {
  CHECK(oracle::rooted_trees_on(1).size() == 1);
  CHECK(oracle::rooted_trees_on(2).size() == 1);
  CHECK(oracle::rooted_trees_on(3).size() == 4);
  CHECK(oracle::rooted_trees_on(4).size() == 26);
  const std::size_t shapes[] = {1, 1, 2, 5, 12, 33, 90, 261};
  const std::size_t bell[] = {1, 2, 5, 15, 52, 203, 877, 4140};
  for (std::size_t n = 1; n <= 8; ++n) {
    CHECK(oracle::all_shapes(n).size() == shapes[n - 1]);
    CHECK(oracle::all_set_partitions(n).size() == bell[n - 1]);
  }
  std::set<std::set<Cluster>> distinct;
  for (const auto& t : oracle::all_shapes(6)) distinct.insert(clusters(t));
  CHECK(distinct.size() == 33);
}

TEST_CASE("results do not depend on child order") {
  const auto a = parse_newick("((a,a',b)U,b')R;");
  const auto b = parse_newick("(b',(b,a',a)U)R;");
  CHECK(clusters(oracle::enumerate_compatible_refinements(a, bind(a, kP2))[0]) ==
        clusters(oracle::enumerate_compatible_refinements(b, bind(b, kP2))[0]));
  CHECK(oracle::oracle_rpair_classes(a, bind(a, kP2)) == oracle::oracle_rpair_classes(b, bind(b, kP2)));
}

TEST_CASE("budgets") {
  const auto wide = parse_newick("(a,b,c,d,e)R;");
  CHECK_THROWS_AS(oracle::enumerate_compatible_refinements(wide, bind(wide, "a b c d e\n")), oracle::BudgetExceeded);
  oracle::OracleBudget small;
  small.max_leaves = 2;
  const auto q = parse_newick(kTreeQ);
  CHECK_THROWS_AS(oracle::enumerate_separating_sets(q, bind(q, kP2), small), oracle::BudgetExceeded);
  CHECK_THROWS_AS(oracle::enumerate_compatible_refinements(q, bind(q, kP2), small), oracle::BudgetExceeded);
  oracle::OracleBudget tight;
  tight.max_refinements = 3;
  const auto p = parse_newick(kTreeP);
  CHECK_THROWS_AS(oracle::enumerate_compatible_refinements(p, bind(p, kP2), tight), oracle::BudgetExceeded);
}
