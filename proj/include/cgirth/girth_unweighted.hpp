#ifndef CGIRTH_GIRTH_UNWEIGHTED_HPP_
#define CGIRTH_GIRTH_UNWEIGHTED_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgirth/report.hpp"
#include "cgirth/simulation.hpp"
#include "cgirth/source_detection.hpp"

namespace cgirth {

// Best crossing-edge candidate found: d(s,x) + d(s,y) + w(x,y) for the edge
// {x,y} and source index sidx.
struct CrossingResult {
  Distance value;
  std::int32_t sidx = -1;
  NodeId x = kNoNode;
  NodeId y = kNoNode;
};

// Every node sends its table (source, distance, parent) to its neighbors, one
// entry per round in closer order. Node y then takes the minimum of
// d(s,x) + d(s,y) + w(x,y) over neighbors x and shared sources s with
// p(s,x) != y and p(s,y) != x. The global minimum is convergecast.
CrossingResult crossing_edges(Simulation& sim, const SourceTables& tables, const std::string& phase,
                              const Network* on = nullptr);

// Reconstructs a simple cycle of weight at most the candidate value from the
// parent pointers of the two endpoints. Weights are taken from g.
std::optional<CycleWitness> crossing_witness(const Graph& g, const SourceTables& tables,
                                             const CrossingResult& r);

struct EstimateOutcome {
  CrossingResult best;
  SourceTables tables;
};

EstimateOutcome estimate(Simulation& sim, const std::vector<char>& is_source, std::int64_t k,
                         const std::string& phase);

// Standalone Estimate(G, S, k) with its own simulation.
GirthEstimate estimate(const Graph& g, const std::vector<char>& is_source, std::int64_t k,
                       const EngineConfig& cfg = {});

struct UnweightedParams {
  int f = 2;
  double c = 1.0;
  // Multipliers in k = ceil(k_const * n^(1/f) * log n) and
  // p_i = min(p_const * n^(-i/f) * log n, 1). Negative means the defaults
  // 12(c+3) and c+3.
  double k_const = -1.0;
  double p_const = -1.0;
};

struct ScaleSchedule {
  int f = 1;
  std::int64_t k = 1;
  std::vector<double> p;  // p[0] = 1 for A_0 = V

  static ScaleSchedule make(NodeId n, const UnweightedParams& params);
};

struct UnweightedRun {
  GirthEstimate result;
  ScaleSchedule schedule;
  std::vector<std::vector<char>> samples;  // A_i per level
  std::vector<Distance> levels;            // M_i per level
};

UnweightedRun approx_girth_unweighted_run(const Graph& g, const UnweightedParams& params,
                                          const EngineConfig& cfg, std::uint64_t seed);

GirthEstimate approx_girth_unweighted(const Graph& g, const UnweightedParams& params,
                                      const EngineConfig& cfg, std::uint64_t seed);

// ceil(n^(num/den)) in integers, correcting floating-point error.
std::int64_t ceil_root_power(std::int64_t n, std::int64_t num, std::int64_t den);

}  // namespace cgirth

#endif  // CGIRTH_GIRTH_UNWEIGHTED_HPP_
