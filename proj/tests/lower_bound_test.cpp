#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "cgirth/engine.hpp"
#include "cgirth/lower_bound.hpp"
#include "cgirth/oracle.hpp"
#include "test_oracles.hpp"

namespace cgirth {
namespace {

using testing::girth_by_edge_removal;

std::vector<int> degrees_left(const HostBipartite& h) {
  std::vector<int> d(h.a, 0);
  for (auto [l, r] : h.edges) ++d[l];
  return d;
}

std::vector<int> degrees_right(const HostBipartite& h) {
  std::vector<int> d(h.a, 0);
  for (auto [l, r] : h.edges) ++d[r];
  return d;
}

// A path on six vertices, small enough for a hand-written input file.
HostBipartite five_edge_host() {
  HostBipartite h;
  h.a = 3;
  h.k = 3;
  h.edges = {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}};
  return h;
}

LowerBoundInstance make(int a, std::int64_t q, const std::string& inputs,
                        LowerBoundMode mode = LowerBoundMode::kDirected, double eps = 1.0, int k = 3) {
  const HostBipartite h = host_bipartite(a, k);
  const auto [ea, eb] = lower_bound_inputs(inputs, h);
  return build_instance(h, q, ea, eb, mode, eps);
}

TEST(Host, FanoAtSeven) {
  const HostBipartite h = host_bipartite(7, 3);
  EXPECT_EQ(h.kind, HostKind::kProjectivePlane);
  EXPECT_EQ(h.graph().n(), 14);
  EXPECT_EQ(h.m(), 21u);
  EXPECT_EQ(girth_by_edge_removal(h.graph()), Distance(6));
  for (int d : degrees_left(h)) EXPECT_EQ(d, 3);
  for (int d : degrees_right(h)) EXPECT_EQ(d, 3);
  // Any two points lie on exactly one common line.
  for (int x = 0; x < 7; ++x) {
    for (int y = x + 1; y < 7; ++y) {
      int common = 0;
      for (int r = 0; r < 7; ++r) {
        const bool bx = std::count(h.edges.begin(), h.edges.end(), std::pair{x, r}) > 0;
        const bool by = std::count(h.edges.begin(), h.edges.end(), std::pair{y, r}) > 0;
        common += bx && by;
      }
      EXPECT_EQ(common, 1);
    }
  }
}

TEST(Host, SixCycleAtThreeIsExtremal) {
  // Largest girth-six subgraph of K_{3,3} by trying all 2^9 edge subsets.
  std::size_t best = 0;
  for (int mask = 0; mask < (1 << 9); ++mask) {
    Graph g(6, false, false);
    for (int e = 0; e < 9; ++e) {
      if (mask >> e & 1) g.add_edge(e / 3, 3 + e % 3);
    }
    if (girth_by_edge_removal(g) >= Distance(6)) best = std::max(best, g.m());
  }
  const HostBipartite h = host_bipartite(3, 3);
  EXPECT_EQ(h.m(), best);
  EXPECT_EQ(h.m(), 6u);
  EXPECT_EQ(girth_by_edge_removal(h.graph()), Distance(6));
}

TEST(Host, QuadrangleAtFifteen) {
  const HostBipartite h = host_bipartite(15, 4);
  EXPECT_EQ(h.kind, HostKind::kQuadrangle);
  EXPECT_EQ(h.m(), 45u);
  EXPECT_EQ(girth_by_edge_removal(h.graph()), Distance(8));
  for (int d : degrees_left(h)) EXPECT_EQ(d, 3);
  for (int d : degrees_right(h)) EXPECT_EQ(d, 3);
}

TEST(Host, LargerPlaneAndQuadrangle) {
  const HostBipartite plane = host_bipartite(13, 3);
  EXPECT_EQ(plane.m(), 13u * 4u);
  EXPECT_EQ(girth_by_edge_removal(plane.graph()), Distance(6));
  const HostBipartite quad = host_bipartite(40, 4);
  EXPECT_EQ(quad.m(), 40u * 4u);
  EXPECT_EQ(exact_girth(quad.graph()).value, Distance(8));
}

TEST(Host, SearchFallbackKeepsGirth) {
  for (auto [a, k] : {std::pair{10, 3}, std::pair{12, 5}, std::pair{20, 4}, std::pair{5, 2}}) {
    const HostBipartite h = host_bipartite(a, k, 3);
    EXPECT_GE(girth_by_edge_removal(h.graph()), Distance(2 * k)) << a << " " << k;
    EXPECT_TRUE(std::is_sorted(h.edges.begin(), h.edges.end()));
    EXPECT_GE(h.m(), static_cast<std::size_t>(2 * a - 1));
  }
  EXPECT_THROW(host_bipartite(100, 5), UnsupportedParameters);
}

TEST(Instance, Structure) {
  const LowerBoundInstance inst = make(7, 5, "random:4");
  const Graph& g = inst.graph;
  const std::int64_t a = 7, q = 5;
  EXPECT_EQ(g.n(), 2 * a * q + 2 * q - 1);
  EXPECT_TRUE(g.directed());
  std::set<NodeId> layer1, layerq, tree;
  for (int x = 0; x < a; ++x) {
    layer1.insert(inst.left(x, 1));
    layer1.insert(inst.right(x, 1));
    layerq.insert(inst.left(x, q));
    layerq.insert(inst.right(x, q));
    for (std::int64_t i = 1; i < q; ++i) {
      EXPECT_TRUE(g.has_edge(inst.right(x, i), inst.right(x, i + 1)));
      EXPECT_TRUE(g.has_edge(inst.left(x, i + 1), inst.left(x, i)));
      EXPECT_FALSE(g.has_edge(inst.right(x, i + 1), inst.right(x, i)));
    }
    for (std::int64_t i = 1; i <= q; ++i) {
      EXPECT_TRUE(g.has_edge(inst.left(x, i), inst.leaf(i)));
      EXPECT_TRUE(g.has_edge(inst.right(x, i), inst.leaf(i)));
    }
  }
  for (std::int64_t j = 0; j < inst.tree_size(); ++j) tree.insert(inst.tree_node(j));
  std::size_t inputs = 0;
  for (const Edge& e : g.edges()) {
    if (tree.count(e.u)) {
      EXPECT_TRUE(tree.count(e.v));
      EXPECT_LT(e.u, e.v);  // parent before child in heap order
      continue;
    }
    const std::int64_t lu = e.u / (2 * a), lv = e.v / (2 * a);
    if (tree.count(e.v) || lu != lv) continue;
    ++inputs;
    EXPECT_TRUE((layer1.count(e.u) && layer1.count(e.v)) || (layerq.count(e.u) && layerq.count(e.v)));
  }
  std::size_t expect = 0;
  for (std::size_t i = 0; i < inst.host.m(); ++i) expect += inst.ea[i] + inst.eb[i];
  EXPECT_EQ(inputs, expect);
  EXPECT_LE(hop_diameter(g), Distance(4 * ceil_log2(g.n()) + 4));
}

TEST(Instance, RejectsBadArguments) {
  const HostBipartite h = host_bipartite(7, 3);
  EXPECT_THROW(build_instance(h, 3, std::vector<char>(20, 0), std::vector<char>(21, 0),
                              LowerBoundMode::kDirected),
               LowerBoundError);
  EXPECT_THROW(build_instance(h, 3, std::vector<char>(21, 0), std::vector<char>(21, 0),
                              LowerBoundMode::kWeighted, 0.4),
               LowerBoundError);
  EXPECT_NO_THROW(build_instance(h, 3, std::vector<char>(21, 0), std::vector<char>(21, 0),
                                 LowerBoundMode::kWeighted, 0.5));
  EXPECT_THROW(lower_bound_inputs("no-such-pattern", h), LowerBoundError);
}

TEST(Instance, EmptyInputsHaveNoCycle) {
  const LowerBoundInstance inst = make(7, 4, "empty");
  EXPECT_TRUE(girth_by_edge_removal(inst.graph).is_infinite());
  EXPECT_TRUE(verify_gap(inst).girth.is_infinite());
}

TEST(Gap, DirectedSharedAndDisjoint) {
  for (int a : {3, 7}) {
    for (std::int64_t q : {3, 5, 10}) {
      const LowerBoundInstance shared = make(a, q, "shared-single");
      EXPECT_EQ(girth_by_edge_removal(shared.graph), Distance(2 * q)) << a << " " << q;
      const GapReport rs = verify_gap(shared);
      EXPECT_TRUE(rs.intersecting);
      EXPECT_EQ(rs.girth, Distance(2 * q));
      EXPECT_LE(rs.hop_diameter, Distance(rs.hop_limit));

      const LowerBoundInstance disjoint = make(a, q, "disjoint-full");
      EXPECT_EQ(girth_by_edge_removal(disjoint.graph), Distance(6 * q)) << a << " " << q;
      const GapReport rd = verify_gap(disjoint);
      EXPECT_FALSE(rd.intersecting);
      EXPECT_EQ(rd.girth, Distance(6 * q));
    }
  }
}

TEST(Gap, FanoAtFive) {
  EXPECT_EQ(verify_gap(make(7, 5, "shared-single")).girth, Distance(10));
  EXPECT_EQ(verify_gap(make(7, 5, "disjoint-full")).girth, Distance(30));
}

TEST(Gap, WeightedOffByTwo) {
  const LowerBoundInstance inst = make(7, 4, "shared-single", LowerBoundMode::kWeighted, 1.0);
  EXPECT_FALSE(inst.graph.directed());
  // Two pipes of three unit edges and two input edges of weight 4.
  EXPECT_EQ(girth_by_edge_removal(inst.graph), Distance(14));
  const GapReport r = verify_gap(inst);
  EXPECT_EQ(r.girth, Distance(14));
  EXPECT_EQ(r.pipe_weighted, 14);
  EXPECT_DOUBLE_EQ(r.paper_weighted, 16.0);
}

TEST(Gap, WeightedDisjointAndHalfEps) {
  for (double eps : {1.0, 0.5, 0.25}) {
    for (std::int64_t q : {3, 5}) {
      const LowerBoundInstance d = make(7, q, "disjoint-full", LowerBoundMode::kWeighted, eps);
      const auto six = static_cast<std::int64_t>(std::llround(6.0 * static_cast<double>(q) / eps));
      EXPECT_GE(girth_by_edge_removal(d.graph), Distance(six));
      EXPECT_GE(verify_gap(d).girth, Distance(six));
      const LowerBoundInstance s = make(3, q, "shared-single", LowerBoundMode::kWeighted, eps);
      const auto input = std::llround(static_cast<double>(q) / eps);
      EXPECT_EQ(girth_by_edge_removal(s.graph), Distance(2 * (q - 1) + 2 * input));
      EXPECT_EQ(verify_gap(s).girth, Distance(2 * (q - 1) + 2 * input));
    }
  }
}

TEST(Gap, ShortcutTreeIsSterile) {
  for (const char* inputs : {"shared-single", "disjoint-full", "random:2", "random:9"}) {
    const LowerBoundInstance inst = make(7, 4, inputs);
    const NodeId core = static_cast<NodeId>(2 * 7 * 4);
    Graph without(core, true, false);
    for (const Edge& e : inst.graph.edges()) {
      if (e.u < core && e.v < core) without.add_edge(e.u, e.v);
    }
    EXPECT_EQ(exact_girth(without).value, exact_girth(inst.graph).value) << inputs;
    for (std::int64_t j = 0; j < inst.tree_size(); ++j) {
      EXPECT_TRUE(shortest_cycle_through(inst.graph, inst.tree_node(j)).is_infinite());
    }
  }
}

TEST(Gap, OneSharedEdgeDropsGirthToTwoQ) {
  const HostBipartite h = host_bipartite(7, 3);
  auto [ea, eb] = lower_bound_inputs("disjoint-full", h);
  for (std::size_t i = 0; i < h.m(); i += 4) {
    auto a = ea, b = eb;
    a[i] = b[i] = 1;
    const auto inst = build_instance(h, 5, a, b, LowerBoundMode::kDirected);
    EXPECT_EQ(exact_girth(inst.graph).value, Distance(10)) << i;
  }
}

TEST(Gap, CyclesProjectToHostCycles) {
  const HostBipartite h = host_bipartite(15, 4);
  int checked = 0;
  for (int seed = 0; seed <= 12; ++seed) {
    auto [ea, eb] = lower_bound_inputs(seed == 0 ? "disjoint-full" : "random:" + std::to_string(seed), h);
    for (std::size_t i = 0; i < h.m(); ++i) {
      if (ea[i] && eb[i]) eb[i] = 0;
    }
    const auto inst = build_instance(h, 3, ea, eb, LowerBoundMode::kDirected);
    const GirthEstimate e = exact_girth(inst.graph);
    if (!e.witness) continue;
    ++checked;
    EXPECT_GE(e.value, Distance(2 * 4 * 3));
    // Contract pipes: the host vertices at input edges, in cycle order.
    std::vector<NodeId> projected;
    const auto& vs = e.witness->vertices;
    const int a = h.a;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const NodeId u = vs[i], v = vs[(i + 1) % vs.size()];
      if (u / (2 * a) == v / (2 * a)) projected.push_back(u % (2 * a));
    }
    EXPECT_GE(projected.size(), 8u);
    std::set<NodeId> distinct(projected.begin(), projected.end());
    EXPECT_EQ(distinct.size(), projected.size());
    const Graph hg = h.graph();
    for (std::size_t i = 0; i < projected.size(); ++i) {
      EXPECT_TRUE(hg.has_edge(projected[i], projected[(i + 1) % projected.size()]));
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Gap, ViolationCarriesWitness) {
  LowerBoundInstance inst = make(7, 3, "disjoint-full");
  // Claim the inputs intersect without changing the graph.
  const auto i = static_cast<std::size_t>(std::find(inst.eb.begin(), inst.eb.end(), 1) - inst.eb.begin());
  inst.ea[i] = 1;
  try {
    verify_gap(inst);
    FAIL() << "expected a gap violation";
  } catch (const GapViolation& v) {
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_TRUE(verify_cycle(inst.graph, *v.witness));
  }
}

TEST(Sidecar, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "cgirth_lb_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "inst.txt").string();
  const LowerBoundInstance inst = make(7, 3, "random:5", LowerBoundMode::kWeighted, 0.5);
  write_instance(path, inst);
  const LowerBoundInstance back = read_instance(path);
  EXPECT_EQ(back.q, 3);
  EXPECT_EQ(back.ea, inst.ea);
  EXPECT_EQ(back.eb, inst.eb);
  EXPECT_EQ(back.graph.m(), inst.graph.m());
  EXPECT_EQ(verify_gap(back).girth, verify_gap(inst).girth);

  const LowerBoundInstance other = make(7, 3, "empty", LowerBoundMode::kWeighted, 0.5);
  write_graph_file(path, other.graph);
  EXPECT_THROW(read_instance(path), LowerBoundError);
  std::filesystem::remove_all(dir);
}

TEST(Inputs, PatternsAndFiles) {
  const HostBipartite h = host_bipartite(13, 3);
  const auto [a1, b1] = lower_bound_inputs("random:7", h);
  const auto [a2, b2] = lower_bound_inputs("random:7", h);
  EXPECT_EQ(a1, a2);
  EXPECT_EQ(b1, b2);
  const auto [da, db] = lower_bound_inputs("disjoint-full", h);
  for (std::size_t i = 0; i < h.m(); ++i) EXPECT_EQ(da[i] + db[i], 1);
  const auto disjoint = build_instance(h, 2, da, db, LowerBoundMode::kDirected);
  EXPECT_EQ(exact_girth(disjoint.graph).value, Distance(12));

  const HostBipartite small = five_edge_host();

  const auto path = std::filesystem::temp_directory_path() / "cgirth_lb_bits.txt";
  {
    std::ofstream out(path);
    out << "10100\n00101\n";
  }
  const auto [fa, fb] = lower_bound_inputs(path.string(), small);
  EXPECT_EQ(fa, (std::vector<char>{1, 0, 1, 0, 0}));
  EXPECT_EQ(fb, (std::vector<char>{0, 0, 1, 0, 1}));
  EXPECT_THROW(lower_bound_inputs(path.string(), h), LowerBoundError);
  std::filesystem::remove(path);
}

TEST(Parameters, SuggestionBalancesSides) {
  const auto [a, q] = suggest_lower_bound_parameters(100000, 3);
  EXPECT_NEAR(a, std::pow(100000.0, 0.4), 1.0);
  EXPECT_EQ(q, 100000 / (2 * a));
}

}  // namespace
}  // namespace cgirth
