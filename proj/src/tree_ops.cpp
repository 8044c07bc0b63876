#include "cgirth/tree_ops.hpp"

#include <algorithm>
#include <deque>

namespace cgirth {

namespace {

constexpr int kTagBits = 2;

struct FloodMsg {
  std::uint32_t bits;
  NodeId root;
  std::int32_t dist;
};

struct FloodProgram {
  using Message = FloodMsg;
  std::vector<NodeId> root;
  std::vector<std::int32_t> dist;
  std::vector<int> parent_port;

  explicit FloodProgram(NodeId n) : root(n), dist(n, 0), parent_port(n, -1) {}

  std::uint32_t bits(const MessageCost& c) const { return c.id_bits + c.counter_bits; }

  void init(NodeContext<Message>& ctx) {
    const NodeId v = ctx.id();
    root[v] = v;
    ctx.send_all({bits(ctx.cost()), v, 0});
    ctx.set_done();
  }
  void step(NodeContext<Message>& ctx, std::span<const Inbound<Message>> inbox) {
    const NodeId v = ctx.id();
    bool changed = false;
    for (const auto& in : inbox) {
      const NodeId r = in.msg.root;
      const std::int32_t d = in.msg.dist + 1;
      if (r < root[v] || (r == root[v] && d < dist[v])) {
        root[v] = r;
        dist[v] = d;
        parent_port[v] = in.port;
        changed = true;
      }
    }
    if (changed) ctx.send_all({bits(ctx.cost()), root[v], dist[v]});
    ctx.set_done();
  }
};

struct ChildMsg {
  std::uint32_t bits;
};

struct ChildProgram {
  using Message = ChildMsg;
  const std::vector<int>& parent_port;
  std::vector<std::vector<int>>& child_ports;

  void init(NodeContext<Message>& ctx) {
    if (parent_port[ctx.id()] >= 0) ctx.send(parent_port[ctx.id()], {1});
    ctx.set_done();
  }
  void step(NodeContext<Message>& ctx, std::span<const Inbound<Message>> inbox) {
    for (const auto& in : inbox) child_ports[ctx.id()].push_back(in.port);
    ctx.set_done();
  }
};

struct AggMsg {
  std::uint32_t bits;
  std::int64_t value;
  bool down;
};

struct AggregateProgram {
  using Message = AggMsg;
  const BfsTree& tree;
  AggregateOp op;
  FieldKind kind;
  std::vector<std::int64_t> acc;
  std::vector<int> waiting;
  std::vector<std::int64_t> result;
  bool broadcast_only = false;

  std::int64_t combine(std::int64_t a, std::int64_t b) const {
    switch (op) {
      case AggregateOp::kMin: return std::min(a, b);
      case AggregateOp::kSum: return a + b;
      case AggregateOp::kAnd: return (a != 0 && b != 0) ? 1 : 0;
    }
    return a;
  }
  std::uint32_t bits(const MessageCost& c) const { return kTagBits + c.bits(kind); }

  void finish_up(NodeContext<Message>& ctx) {
    const NodeId v = ctx.id();
    if (tree.parent_port[v] >= 0) {
      ctx.send(tree.parent_port[v], {bits(ctx.cost()), acc[v], false});
    } else {
      send_down(ctx, acc[v]);
    }
  }
  void send_down(NodeContext<Message>& ctx, std::int64_t value) {
    const NodeId v = ctx.id();
    result[v] = value;
    for (int p : tree.child_ports[v]) ctx.send(p, {bits(ctx.cost()), value, true});
  }

  void init(NodeContext<Message>& ctx) {
    const NodeId v = ctx.id();
    if (broadcast_only) {
      if (tree.parent_port[v] < 0) send_down(ctx, acc[v]);
    } else {
      waiting[v] = static_cast<int>(tree.child_ports[v].size());
      if (waiting[v] == 0) finish_up(ctx);
    }
    ctx.set_done();
  }
  void step(NodeContext<Message>& ctx, std::span<const Inbound<Message>> inbox) {
    const NodeId v = ctx.id();
    for (const auto& in : inbox) {
      if (in.msg.down) {
        send_down(ctx, in.msg.value);
      } else {
        acc[v] = combine(acc[v], in.msg.value);
        if (--waiting[v] == 0) finish_up(ctx);
      }
    }
    ctx.set_done();
  }
};

constexpr int kPack = 16;

struct GatherMsg {
  std::uint32_t bits;
  std::uint8_t count;
  bool down;
  bool end;
  Item items[kPack];
};

struct GatherProgram {
  using Message = GatherMsg;
  const BfsTree& tree;
  int item_bits;
  int per_message = 1;
  std::vector<std::deque<Item>> up, down;
  std::vector<int> ended;
  std::vector<char> sent_end;
  std::vector<std::vector<Item>>& lists;  // indexed by root
  std::vector<std::size_t> down_sent;     // roots: prefix of the list already sent down

  std::uint32_t bits(int count) const { return 2 + static_cast<std::uint32_t>(count) * item_bits; }

  bool children_done(NodeId v) const {
    return ended[v] == static_cast<int>(tree.child_ports[v].size());
  }

  void act(NodeContext<Message>& ctx) {
    const NodeId v = ctx.id();
    const bool is_root = tree.parent_port[v] < 0;
    if (!is_root && !sent_end[v]) {
      GatherMsg m{};
      while (m.count < per_message && !up[v].empty()) {
        m.items[m.count++] = up[v].front();
        up[v].pop_front();
      }
      m.end = up[v].empty() && children_done(v);
      if (m.count > 0 || m.end) {
        m.bits = bits(m.count);
        ctx.send(tree.parent_port[v], m);
        if (m.end) sent_end[v] = 1;
      }
    }
    GatherMsg d{};
    d.down = true;
    if (is_root) {
      auto& list = lists[v];
      while (d.count < per_message && down_sent[v] < list.size()) {
        d.items[d.count++] = list[down_sent[v]++];
      }
    } else {
      while (d.count < per_message && !down[v].empty()) {
        d.items[d.count++] = down[v].front();
        down[v].pop_front();
      }
    }
    if (d.count > 0) {
      d.bits = bits(d.count);
      for (int p : tree.child_ports[v]) ctx.send(p, d);
    }
    const bool idle = is_root ? down_sent[v] == lists[v].size()
                              : down[v].empty() && (sent_end[v] || up[v].empty());
    ctx.set_done(idle);
  }

  void init(NodeContext<Message>& ctx) { act(ctx); }
  void step(NodeContext<Message>& ctx, std::span<const Inbound<Message>> inbox) {
    const NodeId v = ctx.id();
    const bool is_root = tree.parent_port[v] < 0;
    for (const auto& in : inbox) {
      const auto& m = in.msg;
      if (m.down) {
        down[v].insert(down[v].end(), m.items, m.items + m.count);
      } else {
        if (is_root) {
          lists[v].insert(lists[v].end(), m.items, m.items + m.count);
        } else {
          up[v].insert(up[v].end(), m.items, m.items + m.count);
        }
        if (m.end) ++ended[v];
      }
    }
    act(ctx);
  }
};

}  // namespace

BfsTree build_bfs_tree(const Network& net, const EngineConfig& cfg, RoundReport& report) {
  const NodeId n = net.n();
  FloodProgram flood(n);
  report.append(run_program(net, flood, cfg, "bfs-tree"));
  BfsTree t;
  t.root = flood.root;
  t.depth.assign(flood.dist.begin(), flood.dist.end());
  t.parent_port = flood.parent_port;
  t.parent.assign(n, kNoNode);
  t.child_ports.assign(n, {});
  for (NodeId v = 0; v < n; ++v) {
    if (t.parent_port[v] >= 0) t.parent[v] = net.ports(v)[t.parent_port[v]].peer;
    t.height = std::max(t.height, t.depth[v]);
  }
  ChildProgram children{t.parent_port, t.child_ports};
  report.append(run_program(net, children, cfg, "bfs-tree"));
  for (auto& c : t.child_ports) std::sort(c.begin(), c.end());
  return t;
}

std::vector<std::int64_t> tree_aggregate(Simulation& sim, const std::vector<std::int64_t>& values,
                                         AggregateOp op, FieldKind kind, const std::string& phase) {
  const NodeId n = sim.n();
  AggregateProgram prog{sim.tree(), op, kind, values, std::vector<int>(n, 0),
                        std::vector<std::int64_t>(n, 0)};
  sim.charge(run_program(sim.net(), prog, sim.config(), phase));
  return prog.result;
}

std::vector<Distance> tree_min(Simulation& sim, const std::vector<Distance>& values,
                               const std::string& phase) {
  std::vector<std::int64_t> raw(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) raw[i] = values[i].raw();
  const auto out = tree_aggregate(sim, raw, AggregateOp::kMin, FieldKind::kDist, phase);
  std::vector<Distance> res(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    res[i] = out[i] == Distance::infinity().raw() ? Distance::infinity() : Distance(out[i]);
  }
  return res;
}

std::vector<std::int64_t> tree_broadcast(Simulation& sim, const std::vector<std::int64_t>& root_value,
                                         FieldKind kind, const std::string& phase) {
  const NodeId n = sim.n();
  AggregateProgram prog{sim.tree(), AggregateOp::kMin, kind, root_value, std::vector<int>(n, 0),
                        std::vector<std::int64_t>(n, 0)};
  prog.broadcast_only = true;
  sim.charge(run_program(sim.net(), prog, sim.config(), phase));
  return prog.result;
}

std::vector<std::vector<Item>> tree_allgather(Simulation& sim,
                                              const std::vector<std::vector<Item>>& items,
                                              int item_bits, const std::string& phase) {
  const NodeId n = sim.n();
  const BfsTree& t = sim.tree();
  std::vector<std::vector<Item>> lists(n);
  GatherProgram prog{t, item_bits, 1, std::vector<std::deque<Item>>(n),
                     std::vector<std::deque<Item>>(n), std::vector<int>(n, 0),
                     std::vector<char>(n, 0), lists, std::vector<std::size_t>(n, 0)};
  const std::int64_t room = (sim.config().bandwidth(n) - 2) / std::max(item_bits, 1);
  prog.per_message = static_cast<int>(std::clamp<std::int64_t>(room, 1, kPack));
  for (NodeId v = 0; v < n; ++v) {
    if (t.parent_port[v] < 0) {
      lists[v] = items[v];
    } else {
      prog.up[v].assign(items[v].begin(), items[v].end());
    }
  }
  sim.charge(run_program(sim.net(), prog, sim.config(), phase));
  return lists;
}

}  // namespace cgirth
