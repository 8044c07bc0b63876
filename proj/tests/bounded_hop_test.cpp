#include <gtest/gtest.h>

#include "cgirth/bounded_hop.hpp"
#include "cgirth/generators.hpp"
#include "cgirth/oracle.hpp"
#include "test_oracles.hpp"

namespace cgirth {
namespace {

using testing::hop_limited_by_enumeration;
using testing::naive_distances;

TEST(Scale, DyadicArithmetic) {
  const Scale s = Scale::dyadic(4, 1.0, 2);  // 4 / 8
  EXPECT_EQ(s.up(5), 10);
  EXPECT_EQ(s.down(Distance(21)), Distance(10));
  EXPECT_TRUE(s.below_one());
  EXPECT_TRUE(s.down(Distance()).is_infinite());
  const Scale t = Scale::dyadic(1, 2.0, 1);  // 4 / 2
  EXPECT_EQ(t.up(1), 1);
  EXPECT_FALSE(t.below_one());
  EXPECT_EQ(Scale{}.up(7), 7);
}

TEST(Scale, ScaleWeightsFormula) {
  Graph g(3, false, true);
  g.add_edge(0, 1, 5);
  g.add_edge(1, 2, 1);
  const Graph a = scale_weights(g, 4, 1.0, 2);
  EXPECT_EQ(*a.weight(0, 1), 10);
  EXPECT_EQ(*a.weight(1, 2), 2);
  const Graph b = scale_weights(g, 1, 2.0, 1);
  EXPECT_EQ(*b.weight(1, 2), 1);
  EXPECT_EQ(*b.weight(0, 1), 3);
}

TEST(Scale, ScaledCyclesNeverShrinkBelowTheFactor) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto gen = generate(parse_gen_spec("planted:n=40,len=7,W=200"), seed);
    for (int i = 1; i <= 12; ++i) {
      const Scale s = Scale::dyadic(6, 0.5, i);
      const Graph gi = scale_weights(gen.graph, s);
      Weight scaled = 0;
      const auto& c = gen.planted_cycle;
      for (std::size_t j = 0; j < c.size(); ++j) scaled += *gi.weight(c[j], c[(j + 1) % c.size()]);
      EXPECT_GE(s.down(Distance(scaled)), Distance(*gen.planted_weight));
      // With 2^(i-1) <= w(C) < 2^i and fewer than h edges, the scaled cycle
      // fits under h* = (1 + 2/eps) h.
      const Weight w = *gen.planted_weight;
      if ((Weight{1} << (i - 1)) <= w && w < (Weight{1} << i) && c.size() < 6) {
        EXPECT_LE(scaled, hop_cap(6, 0.5));
      }
    }
  }
}

TEST(HopScales, CoverEveryDistance) {
  EXPECT_EQ(hop_cap(4, 1.0), 12);
  EXPECT_EQ(hop_cap(3, 0.25), 27);
  const auto scales = hop_scales(5, 100, 0.5);
  EXPECT_EQ(scales.front().num, scales.front().den);
  for (std::size_t j = 1; j < scales.size(); ++j) EXPECT_GT(scales[j].num, scales[j].den);
}

TEST(BoundedHop, UnitWeightsAreExact) {
  const Graph g = generate(parse_gen_spec("uniform:n=40,p=0.1"), 2).graph;
  Simulation sim(g, {}, 1);
  std::vector<char> s(40, 0);
  s[0] = s[7] = s[19] = 1;
  const auto r = bounded_hop_multisource(sim, s, g.n(), 0.5, "hop");
  for (std::int32_t i = 0; i < 3; ++i) {
    const auto d = naive_distances(g, r.tables.source(i));
    for (NodeId v = 0; v < 40; ++v) EXPECT_EQ(r.tables.dist(v, i), d[v]);
  }
}

TEST(BoundedHop, SingleHeavyEdge) {
  Graph g(2, false, true);
  g.add_edge(0, 1, 9);
  Simulation sim(g, {}, 1);
  const auto r = bounded_hop_multisource(sim, {1, 0}, 1, 0.5, "hop");
  const Distance d = r.tables.dist(1, 0);
  EXPECT_GE(d, Distance(9));
  EXPECT_LE(d.value() * 2, 27);
}

void check_bounds(const Graph& g, std::int64_t h, double eps, std::uint64_t seed) {
  std::vector<char> s(g.n(), 0);
  for (NodeId v = 0; v < g.n(); ++v) s[v] = node_coin(seed, v, 77, 0.3);
  Simulation sim(g, {}, seed);
  const auto r = bounded_hop_multisource(sim, s, h, eps, "hop");
  const auto& t = r.tables;
  for (std::int32_t i = 0; i < t.source_count(); ++i) {
    const NodeId src = t.source(i);
    const auto exact = naive_distances(g, src);
    const auto bounded = hop_limited_distances(g, src, h).dist;
    for (NodeId v = 0; v < g.n(); ++v) {
      const Distance d = t.dist(v, i);
      EXPECT_GE(d, exact[v]) << "pair " << src << "," << v;
      if (bounded[v].is_finite()) {
        ASSERT_TRUE(d.is_finite());
        EXPECT_LE(static_cast<double>(d.value()), (1.0 + eps) * static_cast<double>(bounded[v].value()) + 1e-9)
            << "pair " << src << "," << v;
      }
      if (d.is_finite() && v != src) {
        const NodeId p = t.parent(v, i);
        ASSERT_TRUE(g.has_edge(p, v) || g.has_edge(v, p));
        EXPECT_LE(t.dist(p, i) + *g.weight(p, v), d);
      }
    }
    for (std::int32_t j = 0; j < t.source_count(); ++j) {
      EXPECT_EQ(t.dist(t.source(j), i), t.dist(src, j));
    }
  }
}

TEST(BoundedHop, ApproximatesHopLimitedDistances) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const Graph g = generate(parse_gen_spec("uniform:n=40,p=0.12,W=100"), seed).graph;
    check_bounds(g, 6, 0.25, seed);
    check_bounds(g, 2, 1.0, seed);
    check_bounds(g, 40, 0.5, seed);
  }
}

TEST(BoundedHop, HopOracleAgreesWithEnumeration) {
  const Graph g = generate(parse_gen_spec("uniform:n=12,p=0.3,W=50"), 5).graph;
  for (int h : {1, 2, 3}) {
    const auto a = hop_limited_distances(g, 0, h).dist;
    const auto b = hop_limited_by_enumeration(g, 0, h);
    EXPECT_EQ(a, b);
  }
}

}  // namespace
}  // namespace cgirth
