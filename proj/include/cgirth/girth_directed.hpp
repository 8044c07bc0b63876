#ifndef CGIRTH_GIRTH_DIRECTED_HPP_
#define CGIRTH_GIRTH_DIRECTED_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cgirth/report.hpp"
#include "cgirth/sched_rbfs.hpp"
#include "cgirth/simulation.hpp"
#include "cgirth/source_detection.hpp"

namespace cgirth {

// Distances between every node and a sampled set S, in both directions.
struct DirectedPhase1 {
  std::vector<char> sample;
  SourceTables forward;   // d(s, v)
  SourceTables backward;  // d(v, s)
  std::vector<Distance> mu;          // d(s, v) + w(v, s) over out-edges into S
  std::vector<std::int32_t> closing; // the source index achieving mu, or -1

  std::int32_t source_count() const { return forward.source_count(); }
  Distance to(NodeId y, std::int32_t t) const { return backward.dist(y, t); }
  Distance from(std::int32_t t, NodeId y) const { return forward.dist(y, t); }
  Distance between(std::int32_t a, std::int32_t b) const { return forward.dist(forward.source(b), a); }
  // s -> ... -> v along forward parents, closed by the edge v -> s.
  std::optional<CycleWitness> witness(const Graph& g, NodeId v) const;
};

// Exact directed distances from and to S by two multi-source runs (capped
// when cap is finite), the cycle candidates through S, and an all-gather of
// the S x S matrix.
DirectedPhase1 phase1_long_cycles(Simulation& sim, const std::vector<char>& sample, Distance cap,
                                  const std::string& phase, const Network* on = nullptr);

// t eliminates y for v: 2d(v,t) + d(t,y) <= 2d(v,y) + d(y,t), with infinity
// compared as the largest value (so infinity <= infinity holds).
bool eliminates(Distance d_vt, Distance d_ty, Distance d_vy, Distance d_yt);

// Group of a sampled node under the hash shared by all nodes.
int elimination_group(std::uint64_t seed, NodeId id, int groups);

// R(v) per node as source indices, at most one per group, in group order.
// Only samples reachable from v are eligible: an unreachable t would
// eliminate every y that cannot reach t, including cycles through v.
std::vector<std::vector<std::int32_t>> build_elimination_sets(const Simulation& sim,
                                                              const DirectedPhase1& p1,
                                                              const std::string& phase);

// y joins v's restricted BFS at depth d iff no t in R(v) eliminates it when
// d stands in for d(v,y).
bool membership(const DirectedPhase1& p1, const std::vector<std::int32_t>& r, NodeId v, NodeId y,
                Distance depth);

struct SecondPhaseParams {
  double c = 4.0;
  std::int64_t h = 1;
  Distance depth_cap;
  int budget = 0;  // Stage 1 iterations; 0 means ceil(log n) + 1
  // Observes every restricted-BFS batch (for tests and tracing).
  std::function<void(const std::string&, const std::vector<RbfsSource>&, const RbfsParams&,
                     const RbfsResult&)>
      on_batch;
};

struct LayerTrace {
  std::vector<std::vector<char>> layers;           // B~_0 .. B~_tau
  std::vector<std::int64_t> sizes;                 // |B~_i|
  std::vector<std::vector<char>> samples;          // S_i
  std::vector<std::vector<std::int64_t>> counts;   // p^-1(u, S_i)
  int tau = -1;
  bool budget_exhausted = false;
};

struct SecondPhaseResult {
  LayerTrace trace;
  std::vector<Distance> mu;
  std::vector<std::optional<CycleWitness>> witness;  // for the cycle behind mu
};

SecondPhaseResult second_phase(Simulation& sim, const DirectedPhase1& p1,
                               const std::vector<std::vector<std::int32_t>>& r,
                               const SecondPhaseParams& params, const std::string& phase,
                               const Network* on = nullptr);

struct DirectedParams {
  double sample_const = 2.0;  // phase-one sampling p = min(sample_const * log n / h, 1)
  double c = 4.0;             // layer sampling and threshold constant
  std::int64_t h = 0;         // 0 means ceil(n^(2/3))
  int budget = 0;
};

struct DirectedRun {
  GirthEstimate result;
  std::int64_t h = 0;
  Distance phase1_value;
  Distance second_value;
  std::int32_t sample_size = 0;
  std::vector<NodeId> sources;                // S sorted by ID
  std::vector<std::vector<std::int32_t>> r;   // R(v) as indices into sources
  std::size_t max_r = 0;
  LayerTrace trace;
};

// The two-phase pipeline inside an existing simulation, optionally on a
// reweighted copy of the network. Phase-one distances are capped at
// phase1_cap and restricted BFS depths at bfs_cap.
DirectedRun directed_pipeline(Simulation& sim, const DirectedParams& params, std::int64_t h,
                              Distance phase1_cap, Distance bfs_cap, const std::string& phase,
                              const Network* on = nullptr);

DirectedRun approx_girth_directed_run(const Graph& g, const DirectedParams& params,
                                      const EngineConfig& cfg, std::uint64_t seed);

GirthEstimate approx_girth_directed(const Graph& g, const DirectedParams& params,
                                    const EngineConfig& cfg, std::uint64_t seed);

struct DirectedWeightedParams {
  double eps = 0.5;
  DirectedParams base;
};

struct DirectedWeightedRun {
  GirthEstimate result;
  std::int64_t h = 0;
  std::int64_t cap = 0;
  Distance long_value;
  Distance short_value;
  std::vector<Distance> short_values;
};

DirectedWeightedRun approx_girth_directed_weighted_run(const Graph& g,
                                                       const DirectedWeightedParams& params,
                                                       const EngineConfig& cfg, std::uint64_t seed);

GirthEstimate approx_girth_directed_weighted(const Graph& g, const DirectedWeightedParams& params,
                                             const EngineConfig& cfg, std::uint64_t seed);

}  // namespace cgirth

#endif  // CGIRTH_GIRTH_DIRECTED_HPP_
