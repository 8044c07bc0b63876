#ifndef CGIRTH_TESTS_TEST_ORACLES_HPP_
#define CGIRTH_TESTS_TEST_ORACLES_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "cgirth/graph.hpp"

namespace cgirth::testing {

// O(n^2) Dijkstra without a heap; distances along edge directions.
std::vector<Distance> naive_distances(const Graph& g, NodeId s);

// Girth by removing each edge in turn and closing it with a shortest path.
Distance girth_by_edge_removal(const Graph& g);

// Girth by exhaustive simple-cycle enumeration (small graphs only).
Distance girth_by_enumeration(const Graph& g);

// Least weight over all walks of at most h edges, by enumeration.
std::vector<Distance> hop_limited_by_enumeration(const Graph& g, NodeId s, int h);

// Sequential restricted BFS: a Dijkstra from root along edge directions where
// a node, once settled at depth d, is expanded only if admit(y, d) holds,
// d <= cap and it is not removed. The root is always expanded. Returns the
// depth of every expanded node (infinity elsewhere) and the shortest return
// to the root.
struct RestrictedBfs {
  std::vector<Distance> depth;
  Distance cycle;
};
RestrictedBfs restricted_bfs(const Graph& g, NodeId root,
                             const std::function<bool(NodeId, Distance)>& admit, Distance cap,
                             const std::vector<char>& removed);

Graph petersen();
Graph cycle_graph(NodeId n, bool directed = false);
Graph path_graph(NodeId n, bool directed = false);
Graph complete_graph(NodeId n);

}  // namespace cgirth::testing

#endif  // CGIRTH_TESTS_TEST_ORACLES_HPP_
