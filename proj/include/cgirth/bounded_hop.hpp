#ifndef CGIRTH_BOUNDED_HOP_HPP_
#define CGIRTH_BOUNDED_HOP_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cgirth/simulation.hpp"
#include "cgirth/source_detection.hpp"

namespace cgirth {

// A weight scale delta = num / den. Scaled weights round up and scaled-back
// distances round down, both in exact integer arithmetic, so that
// down(sum of up(w)) >= sum of w for integral w.
struct Scale {
  std::int64_t num = 1;
  std::int64_t den = 1;

  // delta = eps * 2^i / (2h), with eps represented as a multiple of 2^-20.
  static Scale dyadic(std::int64_t h, double eps, int i);

  bool below_one() const { return num < den; }
  Weight up(Weight w) const;
  Distance down(Distance d) const;
};

// Every edge weight w becomes ceil(2hw / (eps * 2^i)).
Graph scale_weights(const Graph& g, std::int64_t h, double eps, int i);
Graph scale_weights(const Graph& g, const Scale& s);

// The scales used for (1+eps)-approximate h-hop distances: one unscaled
// exact run covering every distance below 2h/eps, plus the dyadic scales
// from there up to h * W.
std::vector<Scale> hop_scales(std::int64_t h, Weight max_weight, double eps);

// Distances at or below this cap are kept at every scale.
std::int64_t hop_cap(std::int64_t h, double eps);

struct BoundedHopResult {
  SourceTables tables;  // d~(s, v) with the parent from the minimizing scale
  std::vector<Scale> scales;
  std::int64_t cap = 0;
};

// d(s,v) <= d~(s,v) <= (1+eps) d^h(s,v) for every source s and node v. Each
// scale runs capped, paced source detection on the rescaled network. With
// kForward on a directed graph the estimates are of directed d(s, v).
BoundedHopResult bounded_hop_multisource(Simulation& sim, const std::vector<char>& is_source,
                                         std::int64_t h, double eps, const std::string& phase,
                                         Propagation direction = Propagation::kUndirected);

}  // namespace cgirth

#endif  // CGIRTH_BOUNDED_HOP_HPP_
