#ifndef CGIRTH_ORACLE_HPP_
#define CGIRTH_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cgirth/graph.hpp"
#include "cgirth/report.hpp"

namespace cgirth {

// u is closer than v (to some fixed vertex) iff its distance is smaller, or
// the distances tie and its ID is smaller.
inline bool closer(Distance du, NodeId u, Distance dv, NodeId v) {
  return du < dv || (du == dv && u < v);
}

struct ShortestPaths {
  NodeId source = 0;
  std::vector<Distance> dist;
  std::vector<NodeId> parent;  // kNoNode for the source and unreachable nodes
};

// Single-source shortest paths following edge directions (reverse = true runs
// on the transposed graph, giving distances *to* the source). BFS on
// unweighted graphs, Dijkstra otherwise.
ShortestPaths shortest_paths(const Graph& g, NodeId s, bool reverse = false);

// Distances in the underlying undirected unweighted graph.
std::vector<Distance> hop_distances(const Graph& g, NodeId s);

struct DistanceOracle {
  NodeId source = 0;
  std::optional<std::int64_t> hop_bound;
  std::vector<Distance> dist;
};

// dist[v] = least weight of an s->v path with at most h edges.
DistanceOracle hop_limited_distances(const Graph& g, NodeId s, std::int64_t h);

Distance hop_diameter(const Graph& g);

// Minimum cycle weight (directed cycles for directed graphs) with a witness.
GirthEstimate exact_girth(const Graph& g);

// Shortest directed cycle through v, or infinity.
Distance shortest_cycle_through(const Graph& g, NodeId v);

struct SourceEntry {
  NodeId source = kNoNode;
  Distance dist;
  NodeId parent = kNoNode;
  friend bool operator==(const SourceEntry&, const SourceEntry&) = default;
};

// The min(k, |S|) closest members of S to v, sorted by the closer relation,
// given all distances dist_to_v[s] = d(s, v).
std::vector<SourceEntry> k_closest(std::span<const Distance> dist_to_v,
                                   std::span<const NodeId> sources, std::int64_t k);

}  // namespace cgirth

#endif  // CGIRTH_ORACLE_HPP_
