#ifndef CGIRTH_ENGINE_HPP_
#define CGIRTH_ENGINE_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cgirth/graph.hpp"
#include "cgirth/report.hpp"

namespace cgirth {

// ceil(log2(x)) for x >= 1, and 0 for x <= 1.
int ceil_log2(std::int64_t x);

enum class FieldKind { kId, kDist, kFlag, kCounter };

// Bit cost of message fields on an n-node network with maximum weight W.
struct MessageCost {
  int id_bits = 1;
  int dist_bits = 2;
  int flag_bits = 1;
  int counter_bits = 1;

  static MessageCost for_network(NodeId n, Weight max_weight);

  int bits(FieldKind k) const {
    switch (k) {
      case FieldKind::kId: return id_bits;
      case FieldKind::kDist: return dist_bits;
      case FieldKind::kFlag: return flag_bits;
      case FieldKind::kCounter: return counter_bits;
    }
    return 0;
  }
  int operator()(std::initializer_list<FieldKind> fields) const {
    int total = 0;
    for (FieldKind k : fields) total += bits(k);
    return total;
  }
};

// One endpoint's view of a communication link. Directions and weights are data;
// messages flow both ways on every link of the underlying undirected graph.
struct Port {
  NodeId peer = 0;
  Weight out_w = 0;  // weight of the edge self->peer, 0 if absent
  Weight in_w = 0;   // weight of the edge peer->self, 0 if absent
};

class Network {
 public:
  explicit Network(const Graph& g);

  const Graph& graph() const { return *graph_; }
  NodeId n() const { return graph_->n(); }
  bool directed() const { return graph_->directed(); }
  Weight max_weight() const { return graph_->max_weight(); }
  const MessageCost& cost() const { return cost_; }

  std::span<const Port> ports(NodeId v) const {
    return {ports_.data() + offset_[v], ports_.data() + offset_[v + 1]};
  }
  int degree(NodeId v) const { return offset_[v + 1] - offset_[v]; }
  // Global index of the channel v -> ports(v)[p].
  std::int32_t channel(NodeId v, int p) const { return offset_[v] + p; }
  // Port index at the peer that leads back to v.
  int reverse_port(NodeId v, int p) const { return reverse_[offset_[v] + p]; }
  std::int32_t channel_count() const { return offset_.back(); }
  // Port of v leading to u, or -1.
  int port_to(NodeId v, NodeId u) const;

 private:
  const Graph* graph_;
  MessageCost cost_;
  std::vector<std::int32_t> offset_;
  std::vector<Port> ports_;
  std::vector<int> reverse_;
};

enum class EngineMode { kStrict, kAccounting };

struct EngineConfig {
  double c_bandwidth = 32.0;
  EngineMode mode = EngineMode::kStrict;
  std::int64_t round_cap = 50'000'000;

  // max(ceil(c_B * log2 n), ceil(log2 n) + 1)
  std::int64_t bandwidth(NodeId n) const;
};

class BandwidthExceeded : public std::runtime_error {
 public:
  BandwidthExceeded(NodeId from, NodeId to, std::int64_t round, std::int64_t bits,
                    std::int64_t limit);
  NodeId from, to;
  std::int64_t round, bits;
};

class RoundCapExceeded : public std::runtime_error {
 public:
  explicit RoundCapExceeded(std::int64_t cap);
};

template <class M>
struct Inbound {
  int port;
  NodeId from;
  M msg;
};

template <class M>
class Runner;

// What a node program may touch during init/step: its ID, its ports, global
// scalars, and its outgoing channels.
template <class M>
class NodeContext {
 public:
  NodeId id() const { return v_; }
  NodeId n() const { return net_->n(); }
  std::int64_t round() const { return round_; }
  std::int64_t bandwidth() const { return bandwidth_; }
  const Network& network() const { return *net_; }
  const MessageCost& cost() const { return net_->cost(); }
  std::span<const Port> ports() const { return net_->ports(v_); }

  void send(int port, const M& m);
  void send_all(const M& m) {
    const int deg = net_->degree(v_);
    for (int p = 0; p < deg; ++p) send(p, m);
  }
  // Marks the node terminated (or not). A terminated node is still stepped
  // when mail arrives and may clear the flag.
  void set_done(bool done = true);
  // Guarantees a step at the given future round even if terminated.
  void wake_at(std::int64_t round);

 private:
  friend class Runner<M>;
  Runner<M>* runner_ = nullptr;
  const Network* net_ = nullptr;
  NodeId v_ = 0;
  std::int64_t round_ = 0;
  std::int64_t bandwidth_ = 0;
};

template <class M>
class Runner {
 public:
  Runner(const Network& net, const EngineConfig& cfg)
      : net_(net),
        cfg_(cfg),
        bandwidth_(cfg.bandwidth(net.n())),
        inbox_(net.n()),
        next_inbox_(net.n()),
        done_(net.n(), 0),
        stamp_(net.n(), -1),
        ch_bits_(net.channel_count(), 0),
        ch_stamp_(net.channel_count(), -1) {
    if (cfg_.mode == EngineMode::kAccounting) {
      queues_.resize(net.channel_count());
      progress_.assign(net.channel_count(), 0);
    }
  }

  template <class P>
  RoundReport run(P& prog, const std::string& phase) {
    NodeContext<M> ctx;
    ctx.runner_ = this;
    ctx.net_ = &net_;
    ctx.bandwidth_ = bandwidth_;
    round_ = 0;
    for (NodeId v = 0; v < net_.n(); ++v) {
      ctx.v_ = v;
      ctx.round_ = 0;
      prog.init(ctx);
      if (!done_[v]) awake_.push_back(v);
    }
    std::int64_t last_active = 0;
    for (std::int64_t r = 1;; ++r) {
      round_ = r;
      deliver();
      collect_ready(r);
      if (ready_.empty()) {
        if (in_flight_ == 0 && wakeups_.empty()) break;
        continue;
      }
      if (r > cfg_.round_cap) throw RoundCapExceeded(cfg_.round_cap);
      last_active = r;
      for (NodeId v : ready_) {
        ctx.v_ = v;
        ctx.round_ = r;
        prog.step(ctx, std::span<const Inbound<M>>(inbox_[v]));
        inbox_[v].clear();
        if (!done_[v]) awake_.push_back(v);
      }
    }
    report_.rounds = last_active;
    report_.add_phase(phase, last_active);
    return report_;
  }

 private:
  friend class NodeContext<M>;

  void send(NodeId v, int port, const M& m) {
    const std::int32_t ch = net_.channel(v, port);
    if (ch_stamp_[ch] != round_) {
      ch_stamp_[ch] = round_;
      ch_bits_[ch] = 0;
    }
    ch_bits_[ch] += m.bits;
    ++report_.messages;
    report_.bits += m.bits;
    report_.max_bits = std::max<std::int64_t>(report_.max_bits, ch_bits_[ch]);
    const NodeId to = net_.ports(v)[port].peer;
    if (cfg_.mode == EngineMode::kStrict) {
      if (ch_bits_[ch] > bandwidth_) {
        throw BandwidthExceeded(v, to, round_ + 1, ch_bits_[ch], bandwidth_);
      }
      if (next_inbox_[to].empty()) pending_to_.push_back(to);
      next_inbox_[to].push_back({net_.reverse_port(v, port), v, m});
      ++in_flight_;
    } else {
      if (queues_[ch].empty()) busy_.push_back(ch);
      queues_[ch].push_back({to, {net_.reverse_port(v, port), v, m}});
      ++in_flight_;
    }
  }

  void deliver() {
    if (cfg_.mode == EngineMode::kStrict) {
      std::sort(pending_to_.begin(), pending_to_.end());
      for (NodeId v : pending_to_) {
        in_flight_ -= static_cast<std::int64_t>(next_inbox_[v].size());
        std::swap(inbox_[v], next_inbox_[v]);
        mail_.push_back(v);
      }
      pending_to_.clear();
      return;
    }
    // Oversized traffic on a channel drains at B bits per round. Channel ids
    // increase with the sender, so inboxes stay ordered by sender.
    std::sort(busy_.begin(), busy_.end());
    std::vector<std::int32_t> still;
    for (std::int32_t ch : busy_) {
      auto& q = queues_[ch];
      std::int64_t budget = bandwidth_;
      while (!q.empty()) {
        const std::int64_t need = q.front().in.msg.bits - progress_[ch];
        if (need > budget) {
          progress_[ch] += budget;
          break;
        }
        budget -= need;
        progress_[ch] = 0;
        const NodeId to = q.front().to;
        inbox_[to].push_back(std::move(q.front().in));
        q.pop_front();
        --in_flight_;
        mail_.push_back(to);
      }
      if (!q.empty()) still.push_back(ch);
    }
    busy_.swap(still);
  }

  void collect_ready(std::int64_t r) {
    ready_.clear();
    auto add = [&](NodeId v) {
      if (stamp_[v] != r) {
        stamp_[v] = r;
        ready_.push_back(v);
      }
    };
    for (NodeId v : mail_) add(v);
    mail_.clear();
    for (NodeId v : awake_) {
      if (!done_[v]) add(v);
    }
    awake_.clear();
    while (!wakeups_.empty() && wakeups_.top().first <= r) {
      add(wakeups_.top().second);
      wakeups_.pop();
    }
    std::sort(ready_.begin(), ready_.end());
  }

  const Network& net_;
  EngineConfig cfg_;
  std::int64_t bandwidth_;
  std::int64_t round_ = 0;
  std::int64_t in_flight_ = 0;
  std::vector<std::vector<Inbound<M>>> inbox_, next_inbox_;
  std::vector<char> done_;
  std::vector<std::int64_t> stamp_;
  std::vector<std::int64_t> ch_bits_, ch_stamp_;
  struct Queued {
    NodeId to;
    Inbound<M> in;
  };
  std::vector<std::deque<Queued>> queues_;
  std::vector<NodeId> pending_to_;
  std::vector<std::int64_t> progress_;
  std::vector<std::int32_t> busy_;
  std::vector<NodeId> mail_, awake_, ready_;
  std::priority_queue<std::pair<std::int64_t, NodeId>, std::vector<std::pair<std::int64_t, NodeId>>,
                      std::greater<>>
      wakeups_;
  RoundReport report_;
};

template <class M>
void NodeContext<M>::send(int port, const M& m) {
  runner_->send(v_, port, m);
}

template <class M>
void NodeContext<M>::set_done(bool done) {
  runner_->done_[v_] = done ? 1 : 0;
}

template <class M>
void NodeContext<M>::wake_at(std::int64_t round) {
  runner_->wakeups_.push({round, v_});
}

// Runs one program to global quiescence: every node terminated, no message in
// flight and no pending wake-up. Rounds count message-exchange rounds after
// init (a program that terminates in init takes 0 rounds).
template <class P>
RoundReport run_program(const Network& net, P& prog, const EngineConfig& cfg,
                        const std::string& phase) {
  Runner<typename P::Message> runner(net, cfg);
  return runner.run(prog, phase);
}

}  // namespace cgirth

#endif  // CGIRTH_ENGINE_HPP_
