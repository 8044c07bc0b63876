#include <gtest/gtest.h>

#include "cgirth/generators.hpp"
#include "cgirth/girth_weighted.hpp"
#include "cgirth/oracle.hpp"
#include "test_oracles.hpp"

namespace cgirth {
namespace {

using testing::cycle_graph;
using testing::naive_distances;

void expect_witness(const Graph& g, const GirthEstimate& r) {
  if (r.value.is_infinite()) return;
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(verify_cycle(g, *r.witness));
  EXPECT_LE(Distance(r.witness->weight), r.value);
}

// True if along every shortest-path-tree path from every source, no h
// consecutive vertices avoid S. This is the hitting condition the distance
// guarantee of DisApprox relies on.
bool sources_hit_paths(const Graph& g, const std::vector<char>& s, std::int64_t h) {
  for (NodeId src = 0; src < g.n(); ++src) {
    if (!s[src]) continue;
    const auto sp = shortest_paths(g, src);
    std::vector<NodeId> order(g.n());
    for (NodeId v = 0; v < g.n(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return sp.dist[a] < sp.dist[b]; });
    std::vector<std::int64_t> run(g.n(), 0);
    for (NodeId v : order) {
      if (sp.dist[v].is_infinite() || v == src) continue;
      run[v] = s[v] ? 0 : run[sp.parent[v]] + 1;
      if (run[v] >= h) return false;
    }
  }
  return true;
}

TEST(DisApprox, AllSourcesWithIdentitySpanner) {
  const Graph g = generate(parse_gen_spec("uniform:n=40,p=0.12,W=30"), 1).graph;
  Simulation sim(g, {}, 1);
  const std::vector<char> all(40, 1);
  const double eps = 0.5;
  const auto r = dis_approx(sim, all, 40, 1, eps, "dis");
  EXPECT_EQ(r.spanner.size(), r.overlay.edges.size());
  for (NodeId s = 0; s < 40; ++s) {
    const auto d = naive_distances(g, s);
    EXPECT_EQ(r.tables.dist(s, s), Distance(0));
    for (NodeId v = 0; v < 40; ++v) {
      if (d[v].is_infinite()) continue;
      EXPECT_GE(r.tables.dist(v, s), d[v]);
      EXPECT_LE(static_cast<double>(r.tables.dist(v, s).value()), (1 + eps) * d[v].value() + 1e-9);
    }
  }
}

TEST(DisApprox, SampledSourcesStretch) {
  const int k = 2;
  const double eps = 0.25;
  const std::int64_t h = 8;
  int hit_runs = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = generate(parse_gen_spec("uniform:n=120,p=0.05,W=40"), seed).graph;
    std::vector<char> s(120, 0);
    for (NodeId v = 0; v < 120; ++v) s[v] = node_coin(seed, v, 5, 0.35);
    Simulation sim(g, {}, seed);
    const auto r = dis_approx(sim, s, h, k, eps, "dis");
    const bool hits = sources_hit_paths(g, s, h);
    hit_runs += hits ? 1 : 0;
    const auto& t = r.tables;
    for (std::int32_t i = 0; i < t.source_count(); ++i) {
      const NodeId src = t.source(i);
      const auto d = naive_distances(g, src);
      for (NodeId v = 0; v < 120; ++v) {
        const Distance got = t.dist(v, i);
        EXPECT_GE(got, d[v]);
        if (hits && d[v].is_finite()) {
          ASSERT_TRUE(got.is_finite());
          EXPECT_LE(static_cast<double>(got.value()), (2 * k - 1) * (1 + eps) * d[v].value() + 1e-9);
        }
        if (got.is_finite() && v != src) {
          const NodeId p = t.parent(v, i);
          ASSERT_NE(p, v);
          ASSERT_TRUE(g.has_edge(p, v));
          EXPECT_LE(t.dist(p, i) + *g.weight(p, v), got);
        }
      }
    }
  }
  EXPECT_GT(hit_runs, 0);
}

TEST(BoundedGirth2Approx, UnitCycle) {
  const Graph g = cycle_graph(8);
  const auto r = bounded_girth_2approx(g, 8, {}, {}, 1);
  EXPECT_GE(r.value, Distance(8));
  EXPECT_LE(r.value, Distance(16));
  expect_witness(g, r);
}

TEST(BoundedGirth2Approx, CapBelowGirthStaysSafe) {
  Graph g(3, false, true);
  g.add_edge(0, 1, 5);
  g.add_edge(1, 2, 5);
  g.add_edge(2, 0, 5);
  const auto r = bounded_girth_2approx(g, 7, {}, {}, 1);
  EXPECT_GE(r.value, Distance(15));
}

TEST(BoundedGirth2Approx, PlantedWithinCap) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto gen = generate(parse_gen_spec("planted:n=80,len=6,W=20,cw=4"), seed);
    const Weight g = *gen.planted_weight;
    const auto r = bounded_girth_2approx(gen.graph, g, {.k_const = 0.5, .p_const = 1.0}, {}, seed);
    EXPECT_GE(r.value, Distance(g));
    EXPECT_LE(r.value, Distance(2 * g));
    expect_witness(gen.graph, r);
  }
}

TEST(WeightedSchedule, Parameters) {
  const auto s = WeightedSchedule::make(1000, 50, {.k = 2, .eps = 1.0});
  EXPECT_EQ(s.h, 64);  // 1000^(3/5) = 63.1
  EXPECT_EQ(s.h_star, 192);
  EXPECT_EQ(s.scale_count, 12);
  EXPECT_NEAR(s.p, 3.0 * std::log2(1000.0) / 64.0, 1e-12);
  EXPECT_EQ(WeightedSchedule::make(32, 1, {.k = 3}).h, 8);  // 32^(4/7) = 7.25
}

TEST(ApproxGirthWeighted, UnitWeights) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto gen = generate(parse_gen_spec("planted:n=100,len=10,deg=3"), seed);
    const Distance g = exact_girth(gen.graph).value;
    const auto r = approx_girth_weighted(gen.graph, {.k = 2, .eps = 0.5}, {}, seed);
    EXPECT_GE(r.value, g);
    EXPECT_LE(static_cast<double>(r.value.value()), 4.5 * static_cast<double>(g.value()));
    expect_witness(gen.graph, r);
  }
}

TEST(ApproxGirthWeighted, LightShortCycle) {
  for (std::uint64_t seed : {4u, 5u, 6u}) {
    const auto gen = generate(parse_gen_spec("planted:n=120,len=5,W=200,cw=20"), seed);
    const Weight w = *gen.planted_weight;
    const double eps = 0.5;
    const auto run = approx_girth_weighted_run(gen.graph, {.k = 2, .eps = eps}, {}, seed);
    EXPECT_GE(run.short_value, Distance(w));
    EXPECT_LE(static_cast<double>(run.short_value.value()), 2 * (1 + eps) * w);
    EXPECT_GE(run.result.value, Distance(w));
    expect_witness(gen.graph, run.result);
  }
}

TEST(ApproxGirthWeighted, HeavyLongCycle) {
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    const auto gen = generate(parse_gen_spec("planted:n=150,len=40,deg=2.4,W=500,cw=3"), seed);
    const Weight w = *gen.planted_weight;
    const auto run = approx_girth_weighted_run(gen.graph, {.k = 2, .eps = 1.0, .h = 10}, {}, seed);
    EXPECT_GE(run.long_value, Distance(w));
    EXPECT_GE(run.result.value, Distance(w));
    EXPECT_LE(static_cast<double>(run.result.value.value()), 3 * 2.0 * w);
    EXPECT_LE(run.spanner_edges, run.overlay_edges);
    expect_witness(gen.graph, run.result);
  }
}

TEST(ApproxGirthWeighted, SafeOnFuzz) {
  const char* specs[] = {"uniform:n=60,p=0.08,W=100", "chords:n=50,chords=6,W=30",
                         "grid:rows=6,cols=8,W=9", "regular:n=50,d=4,W=1000"};
  for (const char* spec : specs) {
    for (std::uint64_t seed : {1u, 2u}) {
      const Graph g = generate(parse_gen_spec(spec), seed).graph;
      const Distance girth = exact_girth(g).value;
      for (int k : {2, 3}) {
        const auto r = approx_girth_weighted(g, {.k = k, .eps = 0.5, .sample_const = 0.5}, {}, seed);
        EXPECT_GE(r.value, girth) << spec;
        expect_witness(g, r);
      }
    }
  }
}

}  // namespace
}  // namespace cgirth
