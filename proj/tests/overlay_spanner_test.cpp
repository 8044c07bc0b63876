#include <gtest/gtest.h>

#include <cmath>

#include "cgirth/overlay_spanner.hpp"
#include "cgirth/random.hpp"
#include "test_oracles.hpp"

namespace cgirth {
namespace {

Overlay random_overlay(int m, double density, Weight W, std::uint64_t seed) {
  Overlay h;
  for (int i = 0; i < m; ++i) h.vertices.push_back(3 * i + 1);
  Rng rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Weight> weight(1, W);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (coin(rng) < density) h.edges.push_back({h.vertices[a], h.vertices[b], weight(rng)});
    }
  }
  return h;
}

auto seeded(std::uint64_t seed, double p) {
  return [seed, p](NodeId c, int phase) { return node_coin(seed, c, static_cast<std::uint64_t>(phase), p); };
}

void expect_stretch(const Overlay& h, const std::vector<OverlayEdge>& sp, int k) {
  const auto full = overlay_distances(h);
  const auto thin = overlay_distances(Overlay{h.vertices, sp});
  const int m = static_cast<int>(h.vertices.size());
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (full[a][b].is_infinite()) {
        EXPECT_TRUE(thin[a][b].is_infinite());
        continue;
      }
      ASSERT_TRUE(thin[a][b].is_finite());
      EXPECT_LE(thin[a][b].value(), (2 * k - 1) * full[a][b].value());
    }
  }
}

TEST(ClusterSpanner, KOneKeepsEverything) {
  const Overlay h = random_overlay(30, 0.3, 20, 1);
  const auto sp = cluster_spanner(h, 1, seeded(1, 0.5));
  EXPECT_EQ(sp.size(), h.edges.size());
}

TEST(ClusterSpanner, TreeIsItsOwnSpanner) {
  Overlay h;
  for (int i = 0; i < 20; ++i) h.vertices.push_back(i);
  for (int i = 1; i < 20; ++i) h.edges.push_back({(i - 1) / 2, i, 1 + i % 5});
  for (int k : {2, 3, 4}) {
    const auto sp = cluster_spanner(h, k, seeded(k, 0.3));
    EXPECT_EQ(sp.size(), h.edges.size());
  }
}

TEST(ClusterSpanner, CompleteGraphStretchThree) {
  Overlay h;
  for (int i = 0; i < 5; ++i) h.vertices.push_back(i);
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) h.edges.push_back({a, b, 1});
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sp = cluster_spanner(h, 2, seeded(seed, std::pow(5.0, -0.5)));
    expect_stretch(h, sp, 2);
    EXPECT_LE(static_cast<double>(sp.size()), kSpannerSizeConstant * 2 * std::pow(5.0, 1.5));
  }
}

TEST(ClusterSpanner, StretchOnRandomOverlays) {
  for (int k : {2, 3, 4}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const Overlay h = random_overlay(150, 0.4, 1000, seed * 10 + k);
      const double p = std::pow(150.0, -1.0 / k);
      const auto sp = cluster_spanner(h, k, seeded(seed, p));
      expect_stretch(h, sp, k);
      EXPECT_LE(static_cast<double>(sp.size()), kSpannerSizeConstant * k * std::pow(150.0, 1.0 + 1.0 / k));
      for (const auto& e : sp) {
        EXPECT_NE(std::find(h.edges.begin(), h.edges.end(), e), h.edges.end());
      }
    }
  }
}

TEST(ClusterSpanner, DisconnectedOverlay) {
  Overlay h;
  for (int i = 0; i < 6; ++i) h.vertices.push_back(i);
  h.edges = {{0, 1, 2}, {1, 2, 2}, {0, 2, 3}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}};
  const auto sp = cluster_spanner(h, 2, seeded(4, 0.4));
  expect_stretch(h, sp, 2);
}

TEST(OverlaySpanner, RunsOverTheNetworkAndChargesRounds) {
  const Graph g = testing::complete_graph(8);
  Simulation sim(g, {}, 3);
  Overlay h;
  for (int i = 0; i < 8; ++i) h.vertices.push_back(i);
  for (int a = 0; a < 8; ++a) {
    for (int b = a + 1; b < 8; ++b) h.edges.push_back({a, b, 1 + (a * b) % 7});
  }
  const auto sp = overlay_spanner(sim, h, 2, "spanner");
  expect_stretch(h, sp, 2);
  EXPECT_GT(sim.report().phase_rounds("spanner/broadcast"), 0);
  EXPECT_GT(sim.report().phase_rounds("spanner/clusters"), 0);
}

}  // namespace
}  // namespace cgirth
