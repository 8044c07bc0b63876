#include "cgirth/source_detection.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace cgirth {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

struct EntryMsg {
  std::uint32_t bits;
  std::int32_t sidx;
  std::int64_t dist;
};

using Pending = std::pair<std::int64_t, std::int32_t>;

struct DetectProgram {
  using Message = EntryMsg;

  const std::vector<char>& is_source;
  const DetectionParams& params;
  SourceTables& out;
  std::int32_t S;
  bool truncated;
  std::int64_t cap;
  std::vector<std::int64_t> sent;
  std::vector<std::vector<Pending>> heap;
  std::vector<std::set<Pending>> topk;

  std::size_t slot(NodeId v, std::int32_t i) const {
    return static_cast<std::size_t>(v) * S + static_cast<std::size_t>(i);
  }

  bool sends_on(const Port& p) const {
    switch (params.direction) {
      case Propagation::kUndirected: return true;
      case Propagation::kForward: return p.out_w > 0;
      case Propagation::kBackward: return p.in_w > 0;
    }
    return false;
  }
  Weight receive_weight(const Port& p) const {
    switch (params.direction) {
      case Propagation::kUndirected: return p.out_w;
      case Propagation::kForward: return p.in_w;
      case Propagation::kBackward: return p.out_w;
    }
    return 0;
  }

  void push(NodeId v, std::int64_t d, std::int32_t i) {
    heap[v].emplace_back(d, i);
    std::push_heap(heap[v].begin(), heap[v].end(), std::greater<>());
  }

  // Returns true if the improved entry is among v's k closest.
  bool admit(NodeId v, std::int64_t old_d, std::int64_t d, std::int32_t i) {
    if (!truncated) return true;
    auto& set = topk[v];
    if (old_d != kInf && set.erase({old_d, i}) > 0) {
      set.emplace(d, i);
      return true;
    }
    if (static_cast<std::int64_t>(set.size()) < params.k) {
      set.emplace(d, i);
      return true;
    }
    const Pending worst = *set.rbegin();
    if (Pending{d, i} < worst) {
      set.erase(std::prev(set.end()));
      set.emplace(d, i);
      return true;
    }
    return false;
  }

  bool valid(NodeId v, const Pending& e) const {
    const std::size_t s = slot(v, e.second);
    if (out.raw_dist()[s] != e.first || sent[s] == e.first) return false;
    return !truncated || topk[v].count(e) > 0;
  }

  void emit(NodeContext<Message>& ctx) {
    const NodeId v = ctx.id();
    auto& h = heap[v];
    while (!h.empty() && !valid(v, h.front())) {
      std::pop_heap(h.begin(), h.end(), std::greater<>());
      h.pop_back();
    }
    if (h.empty()) {
      ctx.set_done();
      return;
    }
    const Pending e = h.front();
    if (params.paced && e.first > ctx.round()) {
      ctx.wake_at(e.first);
      ctx.set_done();
      return;
    }
    std::pop_heap(h.begin(), h.end(), std::greater<>());
    h.pop_back();
    sent[slot(v, e.second)] = e.first;
    const EntryMsg m{static_cast<std::uint32_t>(ctx.cost()({FieldKind::kId, FieldKind::kDist})),
                     e.second, e.first};
    const auto ports = ctx.ports();
    for (int p = 0; p < static_cast<int>(ports.size()); ++p) {
      if (sends_on(ports[p])) ctx.send(p, m);
    }
    ctx.set_done(h.empty());
  }

  void init(NodeContext<Message>& ctx) {
    const NodeId v = ctx.id();
    if (is_source[v]) {
      const std::int32_t i = out.index_of(v);
      out.raw_dist()[slot(v, i)] = 0;
      out.raw_parent()[slot(v, i)] = v;
      admit(v, kInf, 0, i);
      push(v, 0, i);
    }
    emit(ctx);
  }

  void step(NodeContext<Message>& ctx, std::span<const Inbound<Message>> inbox) {
    const NodeId v = ctx.id();
    const auto ports = ctx.ports();
    auto& dist = out.raw_dist();
    for (const auto& in : inbox) {
      const Weight w = receive_weight(ports[in.port]);
      if (w <= 0) continue;
      const std::int64_t d = in.msg.dist + w;
      if (d > cap) continue;
      const std::size_t s = slot(v, in.msg.sidx);
      if (d >= dist[s]) continue;
      const std::int64_t old = dist[s];
      dist[s] = d;
      out.raw_parent()[s] = in.from;
      if (admit(v, old, d, in.msg.sidx)) push(v, d, in.msg.sidx);
    }
    emit(ctx);
  }
};

}  // namespace

SourceTables::SourceTables(NodeId n, std::vector<NodeId> sources)
    : n_(n), sources_(std::move(sources)), index_(n, -1) {
  std::sort(sources_.begin(), sources_.end());
  for (std::size_t i = 0; i < sources_.size(); ++i) index_[sources_[i]] = static_cast<std::int32_t>(i);
  const std::size_t cells = static_cast<std::size_t>(n) * sources_.size();
  dist_.assign(cells, kInf);
  parent_.assign(cells, kNoNode);
  member_.assign(cells, 0);
  table_.assign(n, {});
}

Distance SourceTables::dist(NodeId v, std::int32_t i) const {
  const std::int64_t d = dist_[slot(v, i)];
  return d == kInf ? Distance() : Distance(d);
}

std::vector<SourceEntry> SourceTables::entries(NodeId v) const {
  std::vector<SourceEntry> out;
  out.reserve(table_[v].size());
  for (std::int32_t i : table_[v]) out.push_back({sources_[i], dist(v, i), parent(v, i)});
  return out;
}

void SourceTables::set(NodeId v, std::int32_t i, Distance d, NodeId parent) {
  dist_[slot(v, i)] = d.raw();
  parent_[slot(v, i)] = parent;
  member_[slot(v, i)] = d.is_finite() ? 1 : 0;
}

void SourceTables::finalize() {
  const std::int32_t S = source_count();
  for (NodeId v = 0; v < n_; ++v) {
    auto& t = table_[v];
    t.clear();
    for (std::int32_t i = 0; i < S; ++i) {
      if (member_[slot(v, i)]) t.push_back(i);
    }
    std::sort(t.begin(), t.end(), [&](std::int32_t a, std::int32_t b) {
      const std::int64_t da = dist_[slot(v, a)], db = dist_[slot(v, b)];
      return da != db ? da < db : a < b;
    });
  }
}

std::vector<NodeId> members(const std::vector<char>& flags) {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < flags.size(); ++v) {
    if (flags[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

SourceTables detect_sources(Simulation& sim, const std::vector<char>& is_source,
                            const DetectionParams& params, const std::string& phase,
                            const Network* on) {
  const NodeId n = sim.n();
  SourceTables out(n, members(is_source));
  const std::int32_t S = out.source_count();
  DetectProgram prog{is_source,
                     params,
                     out,
                     S,
                     params.k < S,
                     params.cap.raw(),
                     std::vector<std::int64_t>(static_cast<std::size_t>(n) * S, kInf),
                     std::vector<std::vector<Pending>>(n),
                     {}};
  if (prog.truncated) prog.topk.resize(n);
  if (S > 0) sim.run(prog, phase, on);

  auto& member = out.raw_member();
  for (NodeId v = 0; v < n; ++v) {
    if (prog.truncated) {
      for (const auto& [d, i] : prog.topk[v]) member[static_cast<std::size_t>(v) * S + i] = 1;
    } else {
      for (std::int32_t i = 0; i < S; ++i) {
        const std::size_t s = static_cast<std::size_t>(v) * S + i;
        member[s] = out.raw_dist()[s] != kInf ? 1 : 0;
      }
    }
  }
  out.finalize();
  return out;
}

}  // namespace cgirth
