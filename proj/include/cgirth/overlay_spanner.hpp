#ifndef CGIRTH_OVERLAY_SPANNER_HPP_
#define CGIRTH_OVERLAY_SPANNER_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cgirth/simulation.hpp"

namespace cgirth {

struct OverlayEdge {
  NodeId u = 0;  // u < v
  NodeId v = 0;
  Weight w = 1;
  friend bool operator==(const OverlayEdge&, const OverlayEdge&) = default;
};

// A weighted graph on a subset of the base graph's nodes, each overlay node
// knowing its incident overlay edges.
struct Overlay {
  std::vector<NodeId> vertices;
  std::vector<OverlayEdge> edges;
};

// Size bound |H'| <= kSpannerSizeConstant * k * |V_H|^(1+1/k), calibrated on
// dense random overlays (see the calibrate command) and then fixed.
inline constexpr double kSpannerSizeConstant = 1.0;

// Called at the start of each clustering phase with every overlay node's
// cluster center (kNoNode once it has left all clusters).
using PhaseHook = std::function<void(int, const std::vector<NodeId>&)>;

// Clustering (2k-1)-spanner. sampled(center, phase) decides whether a cluster
// survives a phase, meant to be true with probability |V_H|^(-1/k).
std::vector<OverlayEdge> cluster_spanner(const Overlay& h, int k,
                                         const std::function<bool(NodeId, int)>& sampled,
                                         const PhaseHook& on_phase = {});

// Runs the clustering spanner on an overlay of sim's network: every phase's
// cluster assignment is all-gathered over the BFS tree, and at the end the
// spanner edges are all-gathered so that every node knows H'.
std::vector<OverlayEdge> overlay_spanner(Simulation& sim, const Overlay& h, int k,
                                         const std::string& phase);

// All-pairs distances on an overlay, indexed by position in h.vertices.
std::vector<std::vector<Distance>> overlay_distances(const Overlay& h);

}  // namespace cgirth

#endif  // CGIRTH_OVERLAY_SPANNER_HPP_
