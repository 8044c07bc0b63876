#include "cgirth/sched_rbfs.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace cgirth {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

struct RbfsMsg {
  std::uint32_t bits;
  bool spec;
  std::int32_t sidx;
  std::int64_t depth;
};

struct Queued {
  std::int64_t gate;
  std::int32_t sidx;
  std::int64_t depth;
  friend bool operator>(const Queued& a, const Queued& b) {
    if (a.gate != b.gate) return a.gate > b.gate;
    if (a.sidx != b.sidx) return a.sidx > b.sidx;
    return a.depth > b.depth;
  }
};

struct RbfsProgram {
  using Message = RbfsMsg;

  const std::vector<RbfsSource>& sources;
  const Membership& member;
  const RbfsParams& params;
  RbfsResult& out;
  std::vector<std::int32_t> root_of;  // source index rooted at each node, or -1
  std::int64_t cap = kInf;
  std::vector<std::vector<Queued>> queue;                          // per channel
  std::vector<std::unordered_map<std::int32_t, int>> spec_left;   // per channel
  std::vector<std::int64_t> wake;

  bool removed(NodeId v) const { return !params.removed.empty() && params.removed[v]; }

  void enqueue(NodeContext<Message>& ctx, std::int32_t i, std::int64_t depth) {
    const auto ports = ctx.ports();
    for (int p = 0; p < static_cast<int>(ports.size()); ++p) {
      if (ports[p].out_w <= 0) continue;
      auto& q = queue[ctx.network().channel(ctx.id(), p)];
      q.push_back({1 + out.delay[i] + depth, i, depth});
      std::push_heap(q.begin(), q.end(), std::greater<>());
    }
  }

  void schedule(NodeContext<Message>& ctx, std::int64_t r) {
    auto& w = wake[ctx.id()];
    if (w > ctx.round() && w <= r) return;
    w = r;
    ctx.wake_at(r);
  }

  void flush(NodeContext<Message>& ctx) {
    const NodeId v = ctx.id();
    const std::int64_t r = ctx.round();
    const auto ports = ctx.ports();
    const auto bits = static_cast<std::uint32_t>(ctx.cost()({FieldKind::kId, FieldKind::kDist}));
    for (int p = 0; p < static_cast<int>(ports.size()); ++p) {
      if (ports[p].out_w <= 0) continue;
      const std::int32_t ch = ctx.network().channel(v, p);
      auto& q = queue[ch];
      std::int64_t budget = ctx.bandwidth();
      while (!q.empty()) {
        const Queued top = q.front();
        if (out.at[v].at(top.sidx).depth != top.depth) {
          std::pop_heap(q.begin(), q.end(), std::greater<>());
          q.pop_back();
          continue;
        }
        if (top.gate > r) {
          schedule(ctx, top.gate);
          break;
        }
        auto [it, fresh] = spec_left[ch].try_emplace(top.sidx, sources[top.sidx].spec_entries);
        while (it->second > 0 && budget >= bits) {
          ctx.send(p, {bits, true, top.sidx, 0});
          budget -= bits;
          --it->second;
        }
        if (it->second > 0 || budget < bits) {
          schedule(ctx, r + 1);
          break;
        }
        ctx.send(p, {bits, false, top.sidx, top.depth});
        budget -= bits;
        std::pop_heap(q.begin(), q.end(), std::greater<>());
        q.pop_back();
      }
    }
    ctx.set_done();
  }

  void init(NodeContext<Message>& ctx) {
    const NodeId v = ctx.id();
    const std::int32_t i = root_of[v];
    if (i >= 0) {
      out.at[v][i] = {0, v, true};
      ++out.visits[v];
      enqueue(ctx, i, 0);
    }
    flush(ctx);
  }

  void step(NodeContext<Message>& ctx, std::span<const Inbound<Message>> inbox) {
    const NodeId v = ctx.id();
    const auto ports = ctx.ports();
    for (const auto& in : inbox) {
      if (in.msg.spec) continue;
      const Weight w = ports[in.port].in_w;
      if (w <= 0) continue;
      const std::int32_t i = in.msg.sidx;
      const std::int64_t d = in.msg.depth + w;
      if (root_of[v] == i) {
        if (Distance(d) < out.cycle[i]) {
          out.cycle[i] = Distance(d);
          out.closer[i] = in.from;
        }
        continue;
      }
      if (removed(v) || d > cap) continue;
      auto [it, fresh] = out.at[v].try_emplace(i, RbfsVisit{d, in.from, false});
      RbfsVisit& e = it->second;
      if (!fresh) {
        if (d >= e.depth) continue;
        e.depth = d;
        e.parent = in.from;
      }
      if (!member(i, v, Distance(d))) continue;
      if (!e.admitted) {
        e.admitted = true;
        ++out.visits[v];
      }
      enqueue(ctx, i, d);
    }
    flush(ctx);
  }
};

}  // namespace

std::vector<std::pair<NodeId, std::int64_t>> RbfsResult::reached(std::int32_t i) const {
  std::vector<std::pair<NodeId, std::int64_t>> r;
  for (NodeId v = 0; v < static_cast<NodeId>(at.size()); ++v) {
    const auto it = at[v].find(i);
    if (it != at[v].end() && it->second.admitted) r.emplace_back(v, it->second.depth);
  }
  return r;
}

std::optional<CycleWitness> RbfsResult::witness(const Graph& g, std::int32_t i) const {
  if (cycle[i].is_infinite()) return std::nullopt;
  std::vector<NodeId> chain;
  for (NodeId x = closer[i];;) {
    chain.push_back(x);
    const RbfsVisit& e = at[x].at(i);
    if (e.parent == x) break;
    x = e.parent;
    if (chain.size() > at.size()) return std::nullopt;
  }
  CycleWitness w;
  w.vertices.assign(chain.rbegin(), chain.rend());
  const auto& vs = w.vertices;
  for (std::size_t a = 0; a < vs.size(); ++a) {
    const auto wt = g.weight(vs[a], vs[(a + 1) % vs.size()]);
    if (!wt) return std::nullopt;
    w.weight += *wt;
  }
  w.hops = static_cast<std::int64_t>(vs.size());
  if (!verify_cycle(g, w)) return std::nullopt;
  return w;
}

RbfsResult sched_rbfs(Simulation& sim, const std::vector<RbfsSource>& sources,
                      const Membership& member, const RbfsParams& params,
                      const std::string& phase, const Network* on) {
  const Network& net = on ? *on : sim.net();
  const NodeId n = net.n();
  const auto S = static_cast<std::int32_t>(sources.size());
  RbfsResult out;
  out.visits.assign(n, 0);
  out.cycle.assign(S, Distance());
  out.closer.assign(S, kNoNode);
  out.at.assign(n, {});
  out.delay.assign(S, 0);
  if (params.delay_bound > 0) {
    const std::int64_t L = std::max(1, ceil_log2(n));
    const std::int64_t range = (params.delay_bound + L - 1) / L * L;
    for (std::int32_t i = 0; i < S; ++i) {
      Rng rng = sim.rng(sources[i].root, phase + "/delay");
      out.delay[i] = std::uniform_int_distribution<std::int64_t>(0, range - 1)(rng);
    }
  }

  RbfsProgram prog{sources, member, params, out, {}, kInf, {}, {}, {}};
  prog.root_of.assign(n, -1);
  for (std::int32_t i = 0; i < S; ++i) prog.root_of[sources[i].root] = i;
  if (params.depth_cap.is_finite()) prog.cap = params.depth_cap.value();
  prog.queue.assign(net.channel_count(), {});
  prog.spec_left.assign(net.channel_count(), {});
  prog.wake.assign(n, 0);
  sim.run(prog, phase, on);
  return out;
}

}  // namespace cgirth
