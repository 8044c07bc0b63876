#ifndef CGIRTH_SCHED_RBFS_HPP_
#define CGIRTH_SCHED_RBFS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cgirth/simulation.hpp"

namespace cgirth {

struct RbfsSource {
  NodeId root = 0;
  // Entries of the restriction spec; each costs id + dist bits, sent once per
  // channel ahead of the source's first token on it.
  int spec_entries = 0;
};

// Whether node y joins the BFS of source index i when first reached at the
// given depth. Must be monotone: passing at some depth implies passing at
// every smaller one.
using Membership = std::function<bool(std::int32_t, NodeId, Distance)>;

struct RbfsParams {
  Distance depth_cap;
  // Nodes that drop every token (already processed); empty means none.
  std::vector<char> removed;
  // Start delays are uniform in [0, ceil(bound / ceil(log n)) * ceil(log n)).
  std::int64_t delay_bound = 0;
};

struct RbfsVisit {
  std::int64_t depth = 0;
  NodeId parent = kNoNode;
  bool admitted = false;
};

struct RbfsResult {
  std::vector<std::int64_t> delay;   // per source
  std::vector<std::int64_t> visits;  // per node: BFSs that admitted it
  std::vector<Distance> cycle;       // per source: shortest return to the root
  std::vector<NodeId> closer;        // per source: last node before that return
  std::vector<std::unordered_map<std::int32_t, RbfsVisit>> at;  // per node, keyed by source

  // Admitted nodes of source i with their depths, by node ID.
  std::vector<std::pair<NodeId, std::int64_t>> reached(std::int32_t i) const;
  // The cycle root -> ... -> closer -> root, weighed in g.
  std::optional<CycleWitness> witness(const Graph& g, std::int32_t i) const;
};

// Runs one restricted BFS per source concurrently along edge directions.
// Every source starts after a random delay; each channel forwards tokens in
// order of (delay + depth, source) within B bits per round, never before
// round delay + depth. Depths are weighted, so on a weighted network a token
// crosses an edge of weight w as if it were a path of w unit edges. Reached
// sets do not depend on the delays.
RbfsResult sched_rbfs(Simulation& sim, const std::vector<RbfsSource>& sources,
                      const Membership& member, const RbfsParams& params,
                      const std::string& phase, const Network* on = nullptr);

}  // namespace cgirth

#endif  // CGIRTH_SCHED_RBFS_HPP_
