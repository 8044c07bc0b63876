#ifndef CGIRTH_GIRTH_WEIGHTED_HPP_
#define CGIRTH_GIRTH_WEIGHTED_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cgirth/bounded_hop.hpp"
#include "cgirth/girth_unweighted.hpp"
#include "cgirth/overlay_spanner.hpp"

namespace cgirth {

struct DisApproxResult {
  SourceTables tables;  // d_out(s, v) and p(s, v)
  BoundedHopResult hop;
  Overlay overlay;
  std::vector<OverlayEdge> spanner;
};

// (2h)-hop approximate distances from S, an overlay on S weighted by them, a
// (2k-1)-spanner of the overlay known to everyone, and finally
// d_out(s,v) = min over s' of d_H'(s,s') + d~(s',v). The parent of v is its
// parent in the tree of the minimizing s' (never v itself unless v = s), so
// d_out(s, p(s,v)) <= d_out(s,v) - w(p(s,v), v).
DisApproxResult dis_approx(Simulation& sim, const std::vector<char>& is_source, std::int64_t h,
                           int k, double eps, const std::string& phase);

// Constants of the two-level estimate behind the hop-limited 2-approximation:
// k = ceil(k_const * n^(1/2) * log n), sampling min(p_const * n^(-1/2) * log n, 1).
struct TwoApproxParams {
  double c = 1.0;
  double k_const = -1.0;  // negative: 12(c+3)
  double p_const = -1.0;  // negative: c+3
};

// Girth estimate M >= g on the network `on` (sim's own if null), with every
// exploration capped at distance cap; M <= 2g when g <= cap.
EstimateOutcome bounded_girth_2approx(Simulation& sim, const Network* on, std::int64_t cap,
                                      const TwoApproxParams& params, const std::string& phase);

GirthEstimate bounded_girth_2approx(const Graph& g, std::int64_t cap, const TwoApproxParams& params,
                                    const EngineConfig& cfg, std::uint64_t seed);

struct WeightedParams {
  int k = 2;
  double eps = 1.0;
  double c = 1.0;
  double sample_const = -1.0;  // negative: c+2, for min(sample_const * log n / h, 1)
  std::int64_t h = 0;          // 0: ceil(n^((k+1)/(2k+1)))
  TwoApproxParams short_cycles;
};

struct WeightedSchedule {
  std::int64_t h = 1;
  std::int64_t h_star = 1;
  double p = 1.0;
  int scale_count = 1;  // ceil(log(hW))

  static WeightedSchedule make(NodeId n, Weight max_weight, const WeightedParams& params);
};

struct WeightedRun {
  GirthEstimate result;
  WeightedSchedule schedule;
  std::vector<char> sample;
  Distance long_value;
  Distance short_value;
  std::vector<Distance> short_values;  // unscaled, per distinct scale run
  std::size_t overlay_edges = 0;
  std::size_t spanner_edges = 0;
};

WeightedRun approx_girth_weighted_run(const Graph& g, const WeightedParams& params,
                                      const EngineConfig& cfg, std::uint64_t seed);

GirthEstimate approx_girth_weighted(const Graph& g, const WeightedParams& params,
                                    const EngineConfig& cfg, std::uint64_t seed);

}  // namespace cgirth

#endif  // CGIRTH_GIRTH_WEIGHTED_HPP_
