#ifndef CGIRTH_SOURCE_DETECTION_HPP_
#define CGIRTH_SOURCE_DETECTION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cgirth/oracle.hpp"
#include "cgirth/simulation.hpp"

namespace cgirth {

enum class Propagation {
  kUndirected,  // d(s, v) on the underlying undirected graph
  kForward,     // d(s, v) along edge directions
  kBackward,    // d(v, s) along edge directions
};

struct DetectionParams {
  std::int64_t k = 1;
  Distance cap;  // entries farther than this are neither kept nor forwarded
  Propagation direction = Propagation::kUndirected;
  // An entry at distance d is forwarded no earlier than round d, so that
  // weighted edges behave like paths of unit edges.
  bool paced = false;
};

// Per-node source tables. Dense over (node, source index); sources are kept
// sorted by ID so that index order is ID order.
class SourceTables {
 public:
  SourceTables() = default;
  SourceTables(NodeId n, std::vector<NodeId> sources);

  NodeId n() const { return n_; }
  std::int32_t source_count() const { return static_cast<std::int32_t>(sources_.size()); }
  const std::vector<NodeId>& sources() const { return sources_; }
  NodeId source(std::int32_t i) const { return sources_[i]; }
  // Source index of v, or -1.
  std::int32_t index_of(NodeId v) const { return index_[v]; }

  bool has(NodeId v, std::int32_t i) const { return member_[slot(v, i)] != 0; }
  Distance dist(NodeId v, std::int32_t i) const;
  // Neighbor of v toward the source (v itself at the source).
  NodeId parent(NodeId v, std::int32_t i) const { return parent_[slot(v, i)]; }
  // Source indices held by v, sorted by the closer relation.
  const std::vector<std::int32_t>& table(NodeId v) const { return table_[v]; }
  std::vector<SourceEntry> entries(NodeId v) const;

  void set(NodeId v, std::int32_t i, Distance d, NodeId parent);
  // Rebuilds every node's sorted table from the member flags.
  void finalize();

  std::vector<std::int64_t>& raw_dist() { return dist_; }
  std::vector<NodeId>& raw_parent() { return parent_; }
  std::vector<char>& raw_member() { return member_; }

 private:
  std::size_t slot(NodeId v, std::int32_t i) const {
    return static_cast<std::size_t>(v) * sources_.size() + static_cast<std::size_t>(i);
  }

  NodeId n_ = 0;
  std::vector<NodeId> sources_;
  std::vector<std::int32_t> index_;
  std::vector<std::int64_t> dist_;
  std::vector<NodeId> parent_;
  std::vector<char> member_;
  std::vector<std::vector<std::int32_t>> table_;
};

std::vector<NodeId> members(const std::vector<char>& flags);

// Priority forwarding: every node repeatedly announces, to all neighbors along
// the propagation direction, its smallest not-yet-announced entry among its k
// closest sources. Distances are exact at quiescence; each node ends up with
// the min(k, |reachable sources|) closest sources within the cap.
SourceTables detect_sources(Simulation& sim, const std::vector<char>& is_source,
                            const DetectionParams& params, const std::string& phase,
                            const Network* on = nullptr);

}  // namespace cgirth

#endif  // CGIRTH_SOURCE_DETECTION_HPP_
