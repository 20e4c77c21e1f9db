#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <algorithm>
#include <functional>
#include <set>

#include "../support/random_graph.hpp"
#include "hcrawl/error.hpp"
#include "hcrawl/sim/explore.hpp"
#include "hcrawl/sim/fixtures.hpp"
#include "hcrawl/sim/locality.hpp"
#include "hcrawl/sim/metrics.hpp"
#include "hcrawl/sim/promising.hpp"
#include "hcrawl/sim/webgraph.hpp"

namespace hcrawl::sim {
namespace {

std::vector<NodeIndex> path(const Webgraph& g, std::initializer_list<const char*> names) {
  std::vector<NodeIndex> p;
  for (const char* n : names) p.push_back(g.index_of(n));
  return p;
}

TEST(WebgraphTest, ParseAndWrite) {
  std::istringstream in("# demo\nnode u 0.9\nnode v 0.25\n\nedge u v\nedge u v\n");
  const Webgraph g = parse_graph(in);
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.r(g.index_of("v")), 0.25);
  std::ostringstream out;
  write_graph(out, g);
  std::istringstream again(out.str());
  EXPECT_EQ(parse_graph(again), g);
}

TEST(WebgraphTest, ParseErrorsCarryOffsets) {
  std::istringstream bad_r("node u 0.5\nnode v 1.5\n");
  try {
    parse_graph(bad_r);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 11u);
  }
  std::istringstream bad_edge("node u 0.5\nedge u ghost\n");
  EXPECT_THROW(parse_graph(bad_edge), ParseError);
  std::istringstream bad_kind("vertex u 0.5\n");
  EXPECT_THROW(parse_graph(bad_kind), ParseError);
}

TEST(HmTest, Examples) {
  Webgraph g;
  g.add_node("u", 0.9);
  g.add_node("c", 0.5);
  g.add_node("d", 0.2);
  EXPECT_DOUBLE_EQ(h_m(path(g, {"u"}), g, 2), 0.9);
  EXPECT_DOUBLE_EQ(h_m(path(g, {"c", "d"}), g, 2), 0.35);
  EXPECT_DOUBLE_EQ(h_m(path(g, {"u", "c", "d"}), g, 2), 0.35);
  EXPECT_THROW(h_m(std::vector<NodeIndex>{}, g, 2), DomainError);
}

TEST(HmPropertyTest, EqualsBruteForceSuffixMean) {
  std::mt19937_64 rng(21);
  Webgraph g;
  std::uniform_real_distribution<double> unit(0, 1);
  for (int i = 0; i < 10; ++i) g.add_node("n" + std::to_string(i), unit(rng));
  std::uniform_int_distribution<std::size_t> node(0, 9);
  std::uniform_int_distribution<std::size_t> len(1, 15);
  std::uniform_int_distribution<std::size_t> win(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<NodeIndex> p(len(rng));
    for (auto& n : p) n = node(rng);
    const std::size_t m = win(rng);
    double sum = 0;
    std::size_t count = 0;
    for (std::size_t i = p.size(); i > 0 && count < m; --i, ++count) sum += g.r(p[i - 1]);
    ASSERT_NEAR(h_m(p, g, m), sum / static_cast<double>(count), 1e-12);
  }
}

TEST(ExploreSingleVisitTest, IsolatedNode) {
  Webgraph g;
  g.add_node("u", 0.9);
  const auto t = explore_single_visit(g, 0, {0.0, 0.5, 2});
  EXPECT_EQ(t.output, std::vector<NodeIndex>{0});
  EXPECT_EQ(t.total_visits(), 1u);
}

TEST(ExploreSingleVisitTest, CompleteGraphVisitsEachOnce) {
  Webgraph g;
  for (int i = 0; i < 4; ++i) g.add_node("k" + std::to_string(i), 1.0);
  for (NodeIndex a = 0; a < 4; ++a) {
    for (NodeIndex b = 0; b < 4; ++b) {
      if (a != b) g.add_edge(a, b);
    }
  }
  const auto t = explore_single_visit(g, 0, {0.0, 0.0, 2});
  EXPECT_EQ(t.output.size(), 4u);
  for (NodeIndex n = 0; n < 4; ++n) EXPECT_EQ(t.visits[n], 1u);
}

TEST(ExploreSingleVisitTest, MissesNodeBehindBadWindow) {
  const Webgraph g = fixtures::single_visit_counterexample();
  const NodeIndex v = g.index_of("v");
  const auto t = explore_single_visit(g, g.index_of("u"), {0.4, 0.8, 2});
  EXPECT_FALSE(t.visited(v));
  EXPECT_FALSE(t.emitted(v));
  // d was reached through c, as the counterexample requires.
  EXPECT_TRUE(t.visited(g.index_of("d")));
  EXPECT_TRUE(exists_promising_path(g, g.index_of("u"), v, 0.4, 2, 8));
}

TEST(ExploreRevisitTest, ReachesNodeBehindBadWindow) {
  const Webgraph g = fixtures::single_visit_counterexample();
  const NodeIndex v = g.index_of("v");
  const auto t = explore_revisit(g, g.index_of("u"), {0.4, 0.8, 2});
  EXPECT_TRUE(t.visited(v));
  EXPECT_TRUE(t.emitted(v));
  EXPECT_EQ(t.visits[g.index_of("d")], 2u);
}

TEST(ExploreRevisitTest, TwoCycleRevisits) {
  const Webgraph g = fixtures::two_cycle();
  const auto t = explore_revisit(g, g.index_of("x"), {0.4, 0.0, 5}, {0.3});
  EXPECT_FALSE(t.truncated);
  EXPECT_GT(t.total_visits(), 2u);
  // Windows climb from 0.45 towards 0.6: x and y keep re-entering.
  EXPECT_GE(t.visits[g.index_of("x")], 2u);
  EXPECT_GE(t.visits[g.index_of("y")], 2u);
}

TEST(ExploreRevisitTest, ChainMatchesSingleVisit) {
  Webgraph g;
  g.add_node("a", 1.0);
  g.add_node("b", 1.0);
  g.add_node("c", 1.0);
  g.add_edge("a", "b");
  g.add_edge("b", "c");
  const ExploreConfig cfg{0.0, 0.5, 2};
  const auto single = explore_single_visit(g, 0, cfg);
  const auto revisit = explore_revisit(g, 0, cfg);
  EXPECT_EQ(single.output, revisit.output);
  EXPECT_EQ(single.visits, revisit.visits);
}

TEST(ExploreTest, UnknownStartIsLookupError) {
  Webgraph g;
  g.add_node("u", 0.5);
  EXPECT_THROW(explore_single_visit(g, 3, {}), LookupError);
  EXPECT_THROW(explore_revisit(g, 3, {}), LookupError);
}

TEST(ExplorePropertyTest, TerminationBoundsAndSoundness) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<std::size_t> win(1, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const Webgraph g = testing::random_graph(rng, 30);
    const ExploreConfig cfg{unit(rng) * 0.8, unit(rng), win(rng)};
    const auto single = explore_single_visit(g, 0, cfg);
    ASSERT_LE(single.total_visits(), g.node_count());
    for (auto e : single.enqueues) ASSERT_LE(e, 1u);
    const auto revisit = explore_revisit(g, 0, cfg);
    ASSERT_FALSE(revisit.truncated);
    for (NodeIndex n : single.output) ASSERT_GT(g.r(n), cfg.dt);
    for (NodeIndex n : revisit.output) ASSERT_GT(g.r(n), cfg.dt);
  }
}

TEST(ExploreFrontierTest, ExtractionFollowsWindowMean) {
  // Star: the start links to three leaves; leaves come out best-first.
  Webgraph g;
  g.add_node("s", 1.0);
  g.add_node("lo", 0.1);
  g.add_node("hi", 0.9);
  g.add_node("mid", 0.5);
  for (const char* leaf : {"lo", "hi", "mid"}) g.add_edge("s", leaf);
  const auto t = explore_single_visit(g, 0, {0.0, 0.0, 2});
  const std::vector<NodeIndex> expected{0, g.index_of("hi"), g.index_of("mid"), g.index_of("lo")};
  EXPECT_EQ(t.output, expected);
}

TEST(PromisingPathTest, CounterexamplePaths) {
  const Webgraph g = fixtures::single_visit_counterexample();
  EXPECT_TRUE(is_promising_path(g, path(g, {"u", "a", "b", "d", "v"}), 0.4, 2));
  EXPECT_FALSE(is_promising_path(g, path(g, {"u", "c", "d", "v"}), 0.4, 2));
  EXPECT_THROW(is_promising_path(g, path(g, {"u", "b"}), 0.4, 2), DomainError);
  EXPECT_THROW(is_promising_path(g, path(g, {"u"}), 0.4, 2), DomainError);
}

TEST(PromisingPathTest, TrivialPath) {
  Webgraph g;
  g.add_node("u", 0.7);
  g.add_node("v", 0.0);
  g.add_edge("u", "v");
  EXPECT_TRUE(is_promising_path(g, {0, 1}, 0.5, 3));
  EXPECT_FALSE(is_promising_path(g, {0, 1}, 0.7, 3));
}

TEST(PromisingPathTest, ThreeWindowExample) {
  // ht = 0.5, m = 3 over ⟨u, p1, p2, p3, v⟩: three full windows and the
  // prefixes ⟨u⟩, ⟨u, p1⟩.
  Webgraph g;
  for (auto [n, r] : {std::pair{"u", 0.6}, {"p1", 0.5}, {"p2", 0.5}, {"p3", 0.6}, {"v", 0.5}}) g.add_node(n, r);
  g.add_edge("u", "p1");
  g.add_edge("p1", "p2");
  g.add_edge("p2", "p3");
  g.add_edge("p3", "v");
  const auto p = path(g, {"u", "p1", "p2", "p3", "v"});
  EXPECT_TRUE(is_promising_path(g, p, 0.5, 3));
  // ⟨p1, p2, p3⟩ averages 0.533.
  EXPECT_FALSE(is_promising_path(g, p, 0.54, 3));
}

TEST(ExistsPromisingPathTest, Examples) {
  const Webgraph g = fixtures::single_visit_counterexample();
  const NodeIndex u = g.index_of("u");
  const NodeIndex v = g.index_of("v");
  const auto witness = find_promising_path(g, u, v, 0.4, 2, 8);
  ASSERT_TRUE(witness.has_value());
  EXPECT_EQ(*witness, path(g, {"u", "a", "b", "d", "v"}));
  EXPECT_FALSE(exists_promising_path(g, u, v, 0.95, 2, 8));
  EXPECT_FALSE(exists_promising_path(g, u, v, 0.4, 2, 3));

  Webgraph apart;
  apart.add_node("u", 1.0);
  apart.add_node("v", 1.0);
  EXPECT_FALSE(exists_promising_path(apart, 0, 1, 0.0, 2, 8));
}

// Every witness the search returns satisfies the direct check, and every
// simple path the direct check accepts is found.
TEST(ExistsPromisingPathPropertyTest, AgreesWithDirectCheck) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<std::size_t> win(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const Webgraph g = testing::random_graph(rng, 6);
    const double ht = unit(rng) * 0.7;
    const std::size_t m = win(rng);
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      const auto witness = find_promising_path(g, 0, v, ht, m, 6);
      if (witness) {
        ASSERT_EQ(witness->front(), 0u);
        ASSERT_EQ(witness->back(), v);
        ASSERT_TRUE(is_promising_path(g, *witness, ht, m));
      }
      // Enumerate simple paths 0 -> v directly.
      std::vector<NodeIndex> stack{0};
      bool found_simple = false;
      std::function<void()> dfs = [&] {
        const NodeIndex last = stack.back();
        for (NodeIndex s : g.successors(last)) {
          if (s == v) {
            stack.push_back(s);
            if (stack.size() <= 7 && is_promising_path(g, stack, ht, m)) found_simple = true;
            stack.pop_back();
          }
          if (std::find(stack.begin(), stack.end(), s) != stack.end() || stack.size() >= 6) continue;
          stack.push_back(s);
          dfs();
          stack.pop_back();
        }
      };
      dfs();
      if (found_simple) ASSERT_TRUE(witness.has_value());
    }
  }
}

TEST(RevisitReachabilityTest, RevisitCanMissPromisingNodes) {
  const Webgraph g = fixtures::revisit_counterexample();
  const NodeIndex u = g.index_of("u");
  const NodeIndex w = g.index_of("w");
  ASSERT_TRUE(is_promising_path(g, path(g, {"u", "q", "x", "v", "w"}), 0.4, 2));
  const auto t = explore_revisit(g, u, {0.4, 0.0, 2});
  EXPECT_FALSE(t.visited(w));
  EXPECT_EQ(t.visits[g.index_of("v")], 1u);
}

TEST(LocalityTest, DeterministicPerSeed) {
  LocalityParams p;
  p.nodes = 300;
  p.seed = 9;
  EXPECT_EQ(generate_locality_graph(p), generate_locality_graph(p));
  p.seed = 10;
  LocalityParams q = p;
  q.seed = 11;
  EXPECT_FALSE(generate_locality_graph(p) == generate_locality_graph(q));
}

TEST(LocalityTest, IndependentWhenRhoZero) {
  LocalityParams p;
  p.nodes = 2000;
  p.rho = 0.0;
  const Webgraph g = generate_locality_graph(p);
  EXPECT_NEAR(linked_pair_correlation(g), 0.0, 0.1);
}

TEST(LocalityTest, HitsTargetCorrelation) {
  LocalityParams p;
  p.nodes = 2000;
  p.rho = 0.54;
  const Webgraph g = generate_locality_graph(p);
  EXPECT_NEAR(linked_pair_correlation(g), 0.54, 0.1);
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    ASSERT_GE(g.r(n), 0.0);
    ASSERT_LE(g.r(n), 1.0);
  }
}

TEST(LocalityTest, InfeasibleRequests) {
  LocalityParams p;
  p.nodes = 1;
  EXPECT_THROW(generate_locality_graph(p), GenerationError);
  p.nodes = 10;
  p.rho = 1.5;
  EXPECT_THROW(generate_locality_graph(p), GenerationError);
  p.rho = 0.5;
  p.avg_degree = 20;
  EXPECT_THROW(generate_locality_graph(p), GenerationError);
}

TEST(HistogramTest, TwoNodeGraph) {
  Webgraph g;
  g.add_node("u", 0.15);
  g.add_node("v", 0.85);
  g.add_edge("u", "v");
  const auto h = conditional_rank_histogram(g, uniform_buckets(0, 1, 10));
  ASSERT_TRUE(h.rows[1].has_value());
  EXPECT_EQ((*h.rows[1])[8], 1.0);
  for (std::size_t s = 0; s < 10; ++s) {
    if (s != 1) EXPECT_FALSE(h.rows[s].has_value());
  }
  EXPECT_EQ(h.marginal[8], 1.0);
}

TEST(HistogramTest, SharedBucketsGiveIdentityRows) {
  std::vector<std::pair<double, double>> pairs;
  for (double v : {0.05, 0.25, 0.45, 0.95}) {
    pairs.emplace_back(v, v);
    pairs.emplace_back(v, v + 0.01);
  }
  const auto h = conditional_rank_histogram(pairs, uniform_buckets(0, 1, 10));
  for (std::size_t s = 0; s < 10; ++s) {
    if (!h.rows[s]) continue;
    EXPECT_EQ((*h.rows[s])[s], 1.0);
  }
}

TEST(HistogramTest, RowsAreStochastic) {
  LocalityParams p;
  p.nodes = 1500;
  const auto h = conditional_rank_histogram(generate_locality_graph(p), uniform_buckets(0, 1, 10));
  double marginal = 0;
  for (double v : h.marginal) marginal += v;
  EXPECT_NEAR(marginal, 1.0, 1e-9);
  for (const auto& row : h.rows) {
    if (!row) continue;
    double sum = 0;
    for (double v : *row) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(HistogramTest, BadBuckets) {
  EXPECT_THROW(conditional_rank_histogram(std::vector<std::pair<double, double>>{}, {0.0, 0.0}), DomainError);
  EXPECT_THROW(conditional_rank_histogram(std::vector<std::pair<double, double>>{}, {1.0}), DomainError);
  EXPECT_THROW(conditional_rank_histogram({{2.0, 0.5}}, {0.0, 1.0}), DomainError);
}

TEST(MetricsTest, Saving) {
  EXPECT_NEAR(metrics_saving(24038, 7328), 0.6951, 0.0001);
  EXPECT_EQ(metrics_saving(10, 0), 1.0);
  EXPECT_THROW(metrics_saving(0, 0), DomainError);
  EXPECT_THROW(metrics_saving(5, 6), DomainError);
}

TEST(MetricsTest, Recall) {
  std::set<std::string> top;
  for (int i = 0; i < 10; ++i) top.insert("d" + std::to_string(i));
  std::set<std::string> found = top;
  found.insert("extra");
  EXPECT_EQ(metrics_recall(found, top), 1.0);
  EXPECT_EQ(metrics_recall({"d1", "d2", "d3"}, top), 0.3);
  EXPECT_THROW(metrics_recall(found, {}), DomainError);
}

TEST(MetricsTest, ImprovementCountsDeepLevelsOnly) {
  EXPECT_DOUBLE_EQ(metrics_improvement({{1, 3}, {2, 4}}), 0.4);
  EXPECT_DOUBLE_EQ(metrics_improvement({{0, 10}}), 0.0);
}

}  // namespace
}  // namespace hcrawl::sim
