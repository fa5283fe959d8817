// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "xeno/classify.hpp"
#include "xeno/fitch.hpp"
#include "xeno/oracle.hpp"
#include "xeno/refine.hpp"
#include "xeno/report.hpp"
#include "xeno/simulate.hpp"

using namespace xeno;
using namespace xeno::test;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void verdict(bool ok, const char* name, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool max_degree_at_most(const RootedTree& t, std::size_t d) {
  for (Vertex v : t.preorder()) {
    if (t.children(v).size() > d) return false;
  }
  return true;
}

// Counters shared by the exhaustive sweep and the invariant criterion.
struct Invariants {
  std::size_t sets = 0;
  std::size_t outside_hstar = 0;
  std::size_t bad_quotients = 0;
  std::size_t round_trips = 0;
  std::size_t bad_round_trips = 0;
};

void exhaustive_sweep(Invariants& inv) {
  const auto t0 = Clock::now();
  std::size_t instances = 0, edge_bad = 0, pair_bad = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto blocks = oracle::all_set_partitions(n);
    for (const auto& t : oracle::all_shapes(n)) {
      for (const auto& b : blocks) {
        const auto p = oracle::partition_of_leaves(t, b);
        const auto vc = vertex_coloring(t, p);
        if (!vc.compatible) continue;
        ++instances;
        const auto sets = oracle::enumerate_separating_sets(t, p);
        const auto hs = maximal_separating_set(t, vc);
        const auto labels = to_labels(t, p);
        for (const auto& h : sets) {
          ++inv.sets;
          if (!std::includes(hs.edges.begin(), hs.edges.end(), h.edges.begin(), h.edges.end())) ++inv.outside_hstar;
          try {
            quotient(fitch_graph(t, h), labels);
          } catch (const InputError&) {
            ++inv.bad_quotients;
          }
        }
        auto fast_edges = classify_tree_edges(t, vc);
        fast_edges[t.root()] = EdgeClass::kForbidden;
        if (fast_edges != oracle::oracle_edge_classes(t, p)) ++edge_bad;
        if (p.size() > 1 && classify_all(PairClassifier(t, p)) != oracle::oracle_pair_classes(t, p)) ++pair_bad;
      }
    }
  }
  const double secs = seconds_since(t0);
  verdict(edge_bad == 0 && instances > 0, "oracle-edges",
          fmt("all shapes n<=8 x all %zu compatible partitions, %zu mismatches (%.1f s with pairs)", instances, edge_bad,
              secs));
  verdict(pair_bad == 0 && instances > 0, "oracle-pairs",
          fmt("same %zu instances, %zu mismatches", instances, pair_bad));
}

void refinement_sweep() {
  const auto t0 = Clock::now();
  std::size_t instances = 0, bad = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto blocks = oracle::all_set_partitions(n);
    for (const auto& t : oracle::all_shapes(n)) {
      if (!max_degree_at_most(t, 4)) continue;
      for (const auto& b : blocks) {
        const auto p = oracle::partition_of_leaves(t, b);
        if (!edge_coloring(t, p).r_compatible) continue;
        ++instances;
        if (p.size() > 1 && classify_all(RPairClassifier(t, p)) != oracle::oracle_rpair_classes(t, p)) ++bad;
      }
    }
  }
  verdict(bad == 0 && instances > 0, "oracle-rpairs",
          fmt("n<=7, degree<=4, %zu r-compatible instances, %zu mismatches (%.1f s)", instances, bad,
              seconds_since(t0)));
}

void fixture_suite() {
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) failed.emplace_back(what);
  };
  constexpr auto E = PairClass::kEssential, F = PairClass::kForbidden, U = PairClass::kAmbiguous;
  const auto c = parse_newick(kTreeC), q = parse_newick(kTreeQ), m = parse_newick(kTreeM), p = parse_newick(kTreeP),
             x = parse_newick(kTreeX);
  const auto pc = bind(c, kP2), pq = bind(q, kP2), pm = bind(m, kP2), pp = bind(p, kP2), px = bind(x, kP2);

  expect(vertex_coloring(c, pc).compatible && vertex_coloring(q, pq).compatible && vertex_coloring(m, pm).compatible,
         "C, Q, M compatible");
  expect(!vertex_coloring(p, pp).compatible && edge_coloring(p, pp).r_compatible, "P r-compatible only");
  expect(!vertex_coloring(x, px).compatible && !edge_coloring(x, px).r_compatible, "X neither");

  expect(oracle::enumerate_separating_sets(c, pc).size() == 1, "C has a unique separating set");
  expect(oracle::enumerate_separating_sets(q, pq).size() == 3, "Q has three separating sets");
  expect(oracle::enumerate_separating_sets(x, px).empty(), "X has no separating set");

  const auto ec = classify_tree_edges(c, vertex_coloring(c, pc));
  bool c_edges = true;
  for (Vertex v = 0; v < static_cast<Vertex>(c.size()); ++v) {
    if (v != c.root()) c_edges = c_edges && ec[v] == (v == at(c, "Y") ? EdgeClass::kEssential : EdgeClass::kForbidden);
  }
  expect(c_edges, "C edges");
  const auto eq = classify_tree_edges(q, vertex_coloring(q, pq));
  expect(eq[at(q, "X")] == EdgeClass::kAmbiguous && eq[at(q, "Y")] == EdgeClass::kAmbiguous, "Q edges");

  const PairClassifier cc(c, pc), cq(q, pq), cm(m, pm);
  expect(cc.classify(0, 1) == E && cc.classify(1, 0) == F, "C pairs");
  expect(cq.classify(0, 1) == U && cq.classify(1, 0) == U, "Q pairs");
  expect(cm.classify(0, 1) == E, "M pairs");

  const RPairClassifier rc(c, pc), rm(m, pm), rp(p, pp);
  expect(rp.classify(1, 0) == E && rp.classify(0, 1) == F, "P r-pairs");
  expect(rm.classify(0, 1) == U && rm.classify(1, 0) == U, "M r-pairs");
  expect(rc.classify(0, 1) == E && rc.classify(1, 0) == F, "C r-pairs");

  const auto w = clusters(parse_newick("(((a,a')W,b)U,b')R;"));
  expect(clusters(star_refinement(p, pp)) == w && clusters(urs_tree(p, pp)) == w, "P refinements");
  expect(clusters(urs_tree(m, pm)) == clusters(q), "M URS-tree is Q");
  expect(oracle::enumerate_compatible_refinements(p, pp).size() == 1, "P has one compatible refinement");
  expect(oracle::enumerate_compatible_refinements(x, px).empty(), "X has no compatible refinement");

  bool threw = false;
  try {
    PairClassifier bad(p, pp);
  } catch (const IncompatibleError&) {
    threw = true;
  }
  expect(threw, "P rejected by the pair classifier");

  std::string detail = failed.empty() ? "C, Q, M, P, X verdicts as specified" : "failed:";
  for (const auto& f : failed) detail += " [" + f + "]";
  verdict(failed.empty(), "fixtures", detail);
}

void simulation_criteria(Invariants& inv) {
  const auto t0 = Clock::now();
  const auto grid = sim::default_rate_grid();
  constexpr std::size_t kNeeded = 300;
  std::vector<report::CorpusRecord> corpus;
  std::size_t binary_checked = 0, binary_bad = 0;
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    std::size_t included = 0;
    for (std::uint64_t i = 0; included < kNeeded; ++i) {
      const auto s = sim::simulate_scenario(grid[ci], sim::derive_seed(2024, ci, i));
      corpus.push_back(report::parse_record(sim::corpus_record(s)));
      if (s.extinct) continue;
      const auto& t = s.gene_tree();
      ++inv.round_trips;
      if (!equivalent(partition_from_graph(symmetrize(fitch_graph(t, s.transfers))), to_labels(t, s.partition))) {
        ++inv.bad_round_trips;
      }
      if (s.partition.size() < 2) continue;
      ++included;
      if (max_degree_at_most(t, 2)) {
        ++binary_checked;
        if (classify_all(PairClassifier(t, s.partition)) != classify_all(RPairClassifier(t, s.partition))) {
          ++binary_bad;
        }
      }
    }
  }

  const auto pairs = report::pair_fraction_table(corpus, report::PairLevel::kLeaf);
  const auto edges = report::edge_fraction_table(corpus);
  bool band = true;
  std::string band_detail;
  for (const auto& row : pairs.rows) {
    const double v = row.mean[0] + row.mean[1];
    band = band && row.n >= kNeeded && v >= 0.85 && v <= 1.0;
    band_detail += fmt("(%s) %.3f n=%zu; ", row.rates.c_str(), v, row.n);
  }
  verdict(band, "pair-band", "mean essential+forbidden in [0.85,1]: " + band_detail + fmt("%.1f s", seconds_since(t0)));

  bool qual = true;
  std::string qual_detail;
  for (const auto& row : edges.rows) {
    const auto& mu = row.mean;  // essential, ambiguous_in_h, ambiguous_not_in_h, forbidden
    const bool largest = mu[3] > mu[0] && mu[3] > mu[1] && mu[3] > mu[2];
    const bool ok = largest && mu[0] > mu[1] + mu[2] && mu[1] > mu[2];
    qual = qual && ok;
    qual_detail += fmt("(%s) e=%.3f a_in=%.3f a_out=%.3f f=%.3f; ", row.rates.c_str(), mu[0], mu[1], mu[2], mu[3]);
  }
  verdict(qual, "edge-claims", "forbidden largest, essential > ambiguous, ambiguous in H > not in H: " + qual_detail);

  verdict(binary_bad == 0 && binary_checked > 0, "binary-identity",
          fmt("%zu binary scenarios, %zu mismatches between pair and r-pair classes", binary_checked, binary_bad));
}

void performance() {
  std::mt19937_64 rng(99);
  auto instance = [&](std::size_t leaves) {
    auto t = random_tree(leaves, rng, 2);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(t.size()) - 1);
    SeparatingSet h;
    std::size_t classes = 1;
    while (classes < 100) {
      const Vertex v = pick(rng);
      if (v == t.root() || h.contains(v)) continue;
      auto trial = h;
      trial.edges.insert(std::lower_bound(trial.edges.begin(), trial.edges.end(), v), v);
      const auto k = induced_partition(t, trial).size();
      if (k != classes + 1) continue;
      h = std::move(trial);
      classes = k;
    }
    auto p = induced_partition(t, h);
    return std::pair{std::move(t), std::move(p)};
  };

  const auto [big, pbig] = instance(100000);
  auto t0 = Clock::now();
  const PairClassifier pc(big, pbig);
  const RPairClassifier rc(big, pbig);
  const double build = seconds_since(t0);

  t0 = Clock::now();
  const auto all_p = classify_all(pc);
  const double all_pairs = seconds_since(t0);
  t0 = Clock::now();
  const auto all_r = classify_all(rc);
  const double all_rpairs = seconds_since(t0);

  const auto [small, psmall] = instance(1000);
  const PairClassifier pcs(small, psmall);
  const RPairClassifier rcs(small, psmall);

  constexpr std::size_t kQueries = 2000000;
  std::vector<std::pair<ClassId, ClassId>> queries;
  std::uniform_int_distribution<ClassId> cls(0, 99);
  while (queries.size() < kQueries) {
    const ClassId a = cls(rng), b = cls(rng);
    if (a != b) queries.emplace_back(a, b);
  }
  auto latency = [&](const auto& c) {
    double best = 1e9;
    for (int rep = 0; rep < 5; ++rep) {
      std::size_t sink = 0;
      const auto s = Clock::now();
      for (auto [a, b] : queries) sink += static_cast<std::size_t>(c.classify(a, b));
      best = std::min(best, seconds_since(s) / kQueries);
      if (sink == SIZE_MAX) std::puts("");
    }
    return best;
  };
  const double r_pair = latency(pc) / latency(pcs);
  const double r_rpair = latency(rc) / latency(rcs);

  const bool ok = build < 2.0 && all_pairs < 0.05 && all_rpairs < 0.05 && r_pair < 3 && r_rpair < 3 &&
                  all_p.size() == 100 && all_r.size() == 100;
  verdict(ok, "performance",
          fmt("|L|=1e5 |P|=100: build %.3f s; 9900 queries %.2f ms (pairs), %.2f ms (r-pairs); "
              "latency ratio 1e5/1e3 %.2f (pairs), %.2f (r-pairs)",
              build, all_pairs * 1e3, all_rpairs * 1e3, r_pair, r_rpair));
}

}  // namespace

int main() {
  Invariants inv;
  exhaustive_sweep(inv);
  refinement_sweep();
  fixture_suite();
  simulation_criteria(inv);
  performance();
  const bool ok = inv.outside_hstar == 0 && inv.bad_quotients == 0 && inv.bad_round_trips == 0 && inv.sets > 0 &&
                  inv.round_trips > 0;
  verdict(ok, "structural-invariants",
          fmt("%zu separating sets: %zu outside H*, %zu ill-defined quotients; %zu scenario round trips, %zu failed",
              inv.sets, inv.outside_hstar, inv.bad_quotients, inv.round_trips, inv.bad_round_trips));
  return failures == 0 ? 0 : 1;
}
