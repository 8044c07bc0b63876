#ifndef CGIRTH_CALIBRATE_HPP_
#define CGIRTH_CALIBRATE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cgirth/engine.hpp"
#include "cgirth/graph.hpp"

namespace cgirth {

// One measured run of a primitive: its rounds against the expression its
// round bound is proportional to.
struct CalibrationPoint {
  std::string primitive;
  NodeId n = 0;
  double bound = 0;
  std::int64_t rounds = 0;
};

struct PrimitiveFit {
  double constant = 0;   // least squares through the origin: rounds ~ constant * bound
  double max_ratio = 0;  // largest rounds / bound seen
  std::size_t points = 0;
};

struct SpannerSizePoint {
  int vertices = 0;
  int k = 0;
  std::size_t edges = 0;
  double ratio = 0;  // edges / (k * vertices^(1 + 1/k))
};

struct Calibration {
  std::vector<CalibrationPoint> points;
  std::map<std::string, PrimitiveFit> fits;
  std::vector<SpannerSizePoint> spanner;
  double spanner_max_ratio = 0;
};

// Source detection (bound k + D), bounded-hop detection (scales * (|S| + cap))
// and the overlay spanner (k |V_H| + |H'| + D) on random regular graphs of
// each size in ns, plus spanner sizes on dense random overlays.
Calibration calibrate(const std::vector<NodeId>& ns, std::uint64_t seed, const EngineConfig& cfg = {});

}  // namespace cgirth

#endif  // CGIRTH_CALIBRATE_HPP_
