#include "cgirth/engine.hpp"

#include <cmath>

namespace cgirth {

int ceil_log2(std::int64_t x) {
  int b = 0;
  while (b < 63 && (std::int64_t{1} << b) < x) ++b;
  return b;
}

MessageCost MessageCost::for_network(NodeId n, Weight max_weight) {
  MessageCost c;
  const int log_n = std::max(1, ceil_log2(n));
  c.id_bits = log_n;
  c.counter_bits = log_n;
  c.flag_bits = 1;
  c.dist_bits = ceil_log2(static_cast<std::int64_t>(std::max<NodeId>(n, 2)) * max_weight) + 1;
  return c;
}

Network::Network(const Graph& g) : graph_(&g) {
  cost_ = MessageCost::for_network(g.n(), g.max_weight());
  offset_.assign(g.n() + 1, 0);
  for (NodeId v = 0; v < g.n(); ++v) {
    const auto nb = g.underlying_neighbors(v);
    offset_[v + 1] = offset_[v] + static_cast<std::int32_t>(nb.size());
    for (NodeId u : nb) {
      Port p;
      p.peer = u;
      if (g.directed()) {
        p.out_w = g.weight(v, u).value_or(0);
        p.in_w = g.weight(u, v).value_or(0);
      } else {
        p.out_w = p.in_w = *g.weight(v, u);
      }
      ports_.push_back(p);
    }
  }
  reverse_.assign(ports_.size(), -1);
  for (NodeId v = 0; v < g.n(); ++v) {
    for (int p = 0; p < degree(v); ++p) reverse_[offset_[v] + p] = port_to(ports(v)[p].peer, v);
  }
}

int Network::port_to(NodeId v, NodeId u) const {
  auto ps = ports(v);
  auto it = std::lower_bound(ps.begin(), ps.end(), u,
                             [](const Port& p, NodeId x) { return p.peer < x; });
  if (it == ps.end() || it->peer != u) return -1;
  return static_cast<int>(it - ps.begin());
}

std::int64_t EngineConfig::bandwidth(NodeId n) const {
  const int log_n = ceil_log2(n);
  const auto scaled = static_cast<std::int64_t>(std::ceil(c_bandwidth * std::log2(std::max<NodeId>(n, 1))));
  return std::max<std::int64_t>(scaled, log_n + 1);
}

BandwidthExceeded::BandwidthExceeded(NodeId f, NodeId t, std::int64_t r, std::int64_t b,
                                     std::int64_t limit)
    : std::runtime_error("bandwidth exceeded on edge " + std::to_string(f) + "->" +
                         std::to_string(t) + " in round " + std::to_string(r) + ": " +
                         std::to_string(b) + " > " + std::to_string(limit) + " bits"),
      from(f),
      to(t),
      round(r),
      bits(b) {}

RoundCapExceeded::RoundCapExceeded(std::int64_t cap)
    : std::runtime_error("round cap of " + std::to_string(cap) + " exceeded") {}

}  // namespace cgirth
