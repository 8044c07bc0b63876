#include "cgirth/girth_directed.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cgirth/bounded_hop.hpp"
#include "cgirth/girth_unweighted.hpp"
#include "cgirth/tree_ops.hpp"

namespace cgirth {

namespace {

double log_n(NodeId n) { return std::log2(std::max<double>(n, 2)); }

// s -> ... -> v along forward parents of source index i, then v -> s.
std::optional<CycleWitness> forward_witness(const Graph& g, const SourceTables& t, NodeId v,
                                            std::int32_t i) {
  if (i < 0 || !t.dist(v, i).is_finite()) return std::nullopt;
  std::vector<NodeId> chain;
  for (NodeId x = v;; x = t.parent(x, i)) {
    chain.push_back(x);
    if (x == t.source(i)) break;
    if (chain.size() > static_cast<std::size_t>(g.n())) return std::nullopt;
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

// min over out-edges (v, s) with s a source of d(s, v) + w(v, s).
void close_into_sources(const Network& net, const SourceTables& t, std::vector<Distance>& mu,
                        std::vector<std::int32_t>& closing) {
  const NodeId n = net.n();
  mu.assign(n, Distance());
  closing.assign(n, -1);
  for (NodeId v = 0; v < n; ++v) {
    for (const Port& p : net.ports(v)) {
      if (p.out_w <= 0) continue;
      const std::int32_t i = t.index_of(p.peer);
      if (i < 0) continue;
      const Distance cand = t.dist(v, i) + p.out_w;
      if (cand < mu[v]) {
        mu[v] = cand;
        closing[v] = i;
      }
    }
  }
}

Distance global_min(const std::vector<Distance>& values) {
  Distance best;
  for (const Distance& d : values) best = std::min(best, d);
  return best;
}

}  // namespace

std::optional<CycleWitness> DirectedPhase1::witness(const Graph& g, NodeId v) const {
  return forward_witness(g, forward, v, closing[v]);
}

DirectedPhase1 phase1_long_cycles(Simulation& sim, const std::vector<char>& sample, Distance cap,
                                  const std::string& phase, const Network* on) {
  const Network& net = on ? *on : sim.net();
  DirectedPhase1 p;
  p.sample = sample;
  DetectionParams dp;
  dp.k = std::max<std::int64_t>(static_cast<std::int64_t>(members(sample).size()), 1);
  dp.cap = cap;
  dp.paced = true;
  dp.direction = Propagation::kForward;
  p.forward = detect_sources(sim, sample, dp, phase + "/forward", on);
  dp.direction = Propagation::kBackward;
  p.backward = detect_sources(sim, sample, dp, phase + "/backward", on);
  close_into_sources(net, p.forward, p.mu, p.closing);

  std::vector<std::vector<Item>> items(net.n());
  for (std::int32_t b = 0; b < p.source_count(); ++b) {
    const NodeId t = p.forward.source(b);
    for (std::int32_t a : p.forward.table(t)) {
      items[t].push_back({a, b, p.forward.dist(t, a).value()});
    }
  }
  const MessageCost& cost = net.cost();
  tree_allgather(sim, items, cost({FieldKind::kId, FieldKind::kId, FieldKind::kDist}),
                 phase + "/matrix");
  return p;
}

bool eliminates(Distance d_vt, Distance d_ty, Distance d_vy, Distance d_yt) {
  return d_vt + d_vt + d_ty <= d_vy + d_vy + d_yt;
}

int elimination_group(std::uint64_t seed, NodeId id, int groups) {
  const std::uint64_t x = derive_seed(seed, static_cast<std::uint64_t>(id), phase_tag("groups"));
  return static_cast<int>(x % static_cast<std::uint64_t>(groups));
}

std::vector<std::vector<std::int32_t>> build_elimination_sets(const Simulation& sim,
                                                              const DirectedPhase1& p1,
                                                              const std::string& phase) {
  const NodeId n = sim.n();
  const int beta = std::max(1, ceil_log2(n));
  std::vector<std::vector<std::int32_t>> groups(beta);
  for (std::int32_t t = 0; t < p1.source_count(); ++t) {
    groups[elimination_group(sim.seed(), p1.forward.source(t), beta)].push_back(t);
  }
  std::vector<std::vector<std::int32_t>> r(n);
  std::vector<std::int32_t> open;
  for (NodeId v = 0; v < n; ++v) {
    Rng rng = sim.rng(v, phase + "/elim");
    for (const auto& group : groups) {
      open.clear();
      for (std::int32_t t : group) {
        bool survives = p1.to(v, t).is_finite();
        for (std::int32_t u : r[v]) {
          if (eliminates(p1.to(v, u), p1.between(u, t), p1.to(v, t), p1.between(t, u))) {
            survives = false;
            break;
          }
        }
        if (survives) open.push_back(t);
      }
      if (open.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
      r[v].push_back(open[pick(rng)]);
    }
  }
  return r;
}

bool membership(const DirectedPhase1& p1, const std::vector<std::int32_t>& r, NodeId v, NodeId y,
                Distance depth) {
  for (std::int32_t t : r) {
    if (eliminates(p1.to(v, t), p1.from(t, y), depth, p1.to(y, t))) return false;
  }
  return true;
}

SecondPhaseResult second_phase(Simulation& sim, const DirectedPhase1& p1,
                               const std::vector<std::vector<std::int32_t>>& r,
                               const SecondPhaseParams& params, const std::string& phase,
                               const Network* on) {
  const NodeId n = sim.n();
  const double logn = log_n(n);
  const double p = std::min(params.c * logn / static_cast<double>(params.h), 1.0);
  const double threshold = 3.0 * params.c * logn;
  const int budget = params.budget > 0 ? params.budget : ceil_log2(n) + 1;

  SecondPhaseResult out;
  out.mu.assign(n, Distance());
  out.witness.assign(n, std::nullopt);
  LayerTrace& tr = out.trace;

  auto batch = [&](const std::vector<NodeId>& roots, RbfsParams rp, const std::string& tag) {
    std::vector<RbfsSource> sources;
    sources.reserve(roots.size());
    for (NodeId v : roots) sources.push_back({v, static_cast<int>(r[v].size())});
    const Membership member = [&](std::int32_t j, NodeId y, Distance d) {
      return membership(p1, r[roots[j]], roots[j], y, d);
    };
    RbfsResult res = sched_rbfs(sim, sources, member, rp, tag, on);
    if (params.on_batch) params.on_batch(tag, sources, rp, res);
    return res;
  };

  // Stage 1: approximate layers by sampled restricted BFS counts.
  std::vector<char> cur(n, 1);
  for (int i = 0;; ++i) {
    const std::string tag = phase + "/stage1/" + std::to_string(i);
    std::vector<std::int64_t> flags(cur.begin(), cur.end());
    const auto sums = tree_aggregate(sim, flags, AggregateOp::kSum, FieldKind::kCounter, tag + "/size");
    std::int64_t size = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (sim.tree().parent[v] == kNoNode) size += sums[v];
    }
    if (size == 0) break;
    tr.layers.push_back(cur);
    tr.sizes.push_back(size);
    if (i == budget) {
      tr.budget_exhausted = true;
      break;
    }
    std::vector<char> s(n, 0);
    std::vector<NodeId> roots;
    for (NodeId v = 0; v < n; ++v) {
      if (cur[v] && sim.coin(v, tag + "/sample", p)) {
        s[v] = 1;
        roots.push_back(v);
      }
    }
    RbfsParams rp;
    rp.depth_cap = params.depth_cap;
    rp.delay_bound = static_cast<std::int64_t>(std::ceil(p * static_cast<double>(size)));
    const RbfsResult res = batch(roots, rp, tag + "/rbfs");
    std::vector<char> next(n, 0);
    for (NodeId u = 0; u < n; ++u) next[u] = cur[u] && static_cast<double>(res.visits[u]) > threshold;
    tr.samples.push_back(std::move(s));
    tr.counts.push_back(res.visits);
    cur = std::move(next);
  }
  tr.tau = static_cast<int>(tr.layers.size()) - 1;

  // Stage 2: exact restricted BFS from each layer difference, outermost first,
  // removing processed nodes.
  std::vector<char> removed(n, 0);
  for (int i = tr.tau; i >= 0; --i) {
    std::vector<NodeId> roots;
    for (NodeId v = 0; v < n; ++v) {
      const bool inner = i + 1 <= tr.tau && tr.layers[i + 1][v];
      if (tr.layers[i][v] && !inner) roots.push_back(v);
    }
    RbfsParams rp;
    rp.depth_cap = params.depth_cap;
    rp.removed = removed;
    rp.delay_bound = std::min<std::int64_t>(static_cast<std::int64_t>(roots.size()), 4 * params.h);
    const RbfsResult res = batch(roots, rp, phase + "/stage2/" + std::to_string(i));
    for (std::int32_t j = 0; j < static_cast<std::int32_t>(roots.size()); ++j) {
      const NodeId v = roots[j];
      if (res.cycle[j] < out.mu[v]) {
        out.mu[v] = res.cycle[j];
        out.witness[v] = res.witness(sim.graph(), j);
      }
      removed[v] = 1;
    }
  }
  return out;
}

DirectedRun directed_pipeline(Simulation& sim, const DirectedParams& params, std::int64_t h,
                              Distance phase1_cap, Distance bfs_cap, const std::string& phase,
                              const Network* on) {
  const NodeId n = sim.n();
  DirectedRun run;
  run.h = h;
  const double p = std::min(params.sample_const * log_n(n) / static_cast<double>(h), 1.0);
  std::vector<char> sample(n, 0);
  for (NodeId v = 0; v < n; ++v) sample[v] = sim.coin(v, phase + "/sample", p) ? 1 : 0;

  const DirectedPhase1 p1 = phase1_long_cycles(sim, sample, phase1_cap, phase + "/phase1", on);
  run.sample_size = p1.source_count();
  run.sources = p1.forward.sources();
  run.r = build_elimination_sets(sim, p1, phase);
  const auto& r = run.r;
  for (const auto& rv : r) run.max_r = std::max(run.max_r, rv.size());

  SecondPhaseParams sp;
  sp.c = params.c;
  sp.h = h;
  sp.depth_cap = bfs_cap;
  sp.budget = params.budget;
  SecondPhaseResult second = second_phase(sim, p1, r, sp, phase + "/second", on);
  run.trace = std::move(second.trace);

  std::vector<Distance> mu(n);
  for (NodeId v = 0; v < n; ++v) mu[v] = std::min(p1.mu[v], second.mu[v]);
  const auto agreed = tree_min(sim, mu, phase + "/min");
  run.result.value = global_min(agreed);
  run.phase1_value = global_min(p1.mu);
  run.second_value = global_min(second.mu);

  if (run.result.value.is_finite()) {
    for (NodeId v = 0; v < n; ++v) {
      if (mu[v] != run.result.value) continue;
      run.result.witness = p1.mu[v] == mu[v] ? p1.witness(sim.graph(), v) : second.witness[v];
      break;
    }
  }
  return run;
}

DirectedRun approx_girth_directed_run(const Graph& g, const DirectedParams& params,
                                      const EngineConfig& cfg, std::uint64_t seed) {
  if (!g.directed()) throw std::invalid_argument("expects a directed graph");
  const NodeId n = g.n();
  const std::int64_t h = params.h > 0 ? params.h : std::max<std::int64_t>(ceil_root_power(n, 2, 3), 1);
  Simulation sim(g, cfg, seed);
  DirectedRun run = directed_pipeline(sim, params, h, Distance(), Distance(h), "directed");
  run.result.report = sim.report();
  return run;
}

GirthEstimate approx_girth_directed(const Graph& g, const DirectedParams& params,
                                    const EngineConfig& cfg, std::uint64_t seed) {
  return approx_girth_directed_run(g, params, cfg, seed).result;
}

DirectedWeightedRun approx_girth_directed_weighted_run(const Graph& g,
                                                       const DirectedWeightedParams& params,
                                                       const EngineConfig& cfg, std::uint64_t seed) {
  if (!g.directed()) throw std::invalid_argument("expects a directed graph");
  const NodeId n = g.n();
  DirectedWeightedRun run;
  run.h = params.base.h > 0 ? params.base.h : std::max<std::int64_t>(ceil_root_power(n, 2, 3), 1);
  run.cap = hop_cap(run.h, params.eps);
  Simulation sim(g, cfg, seed);

  // Long cycles: approximate directed distances from a sample at full hop
  // budget, closed by an edge back into the sample.
  const double p = std::min(params.base.sample_const * log_n(n) / static_cast<double>(run.h), 1.0);
  std::vector<char> sample(n, 0);
  for (NodeId v = 0; v < n; ++v) sample[v] = sim.coin(v, "long/sample", p) ? 1 : 0;
  const auto hop = bounded_hop_multisource(sim, sample, std::max<NodeId>(n, 1), params.eps, "long",
                                           Propagation::kForward);
  std::vector<Distance> mu;
  std::vector<std::int32_t> closing;
  close_into_sources(sim.net(), hop.tables, mu, closing);
  run.long_value = global_min(tree_min(sim, mu, "long/min"));

  // Short cycles: the unweighted pipeline on rescaled copies, depths capped.
  // Scales with delta < 1 all reduce to one run on the original weights.
  const int scale_count = std::max(
      1, static_cast<int>(std::ceil(std::log2(static_cast<double>(run.h) * static_cast<double>(g.max_weight())))));
  std::optional<GirthEstimate> short_best;
  bool unscaled_done = false;
  for (int i = 1; i <= scale_count; ++i) {
    Scale sc = Scale::dyadic(run.h, params.eps, i);
    if (sc.below_one()) {
      if (unscaled_done) continue;
      unscaled_done = true;
      sc = Scale{};
    }
    const std::string tag = "short/scale" + std::to_string(i);
    DirectedRun r;
    if (sc.num == sc.den) {
      r = directed_pipeline(sim, params.base, run.h, Distance(run.cap), Distance(run.cap), tag);
    } else {
      const OwnedNetwork scaled(scale_weights(g, sc));
      r = directed_pipeline(sim, params.base, run.h, Distance(run.cap), Distance(run.cap), tag, &scaled.net);
    }
    r.result.value = sc.down(r.result.value);
    run.short_values.push_back(r.result.value);
    if (!short_best || r.result.value < short_best->value) short_best = std::move(r.result);
  }
  run.short_value = short_best->value;

  if (run.long_value <= run.short_value) {
    run.result.value = run.long_value;
    if (run.long_value.is_finite()) {
      for (NodeId v = 0; v < n; ++v) {
        if (mu[v] != run.long_value) continue;
        run.result.witness = forward_witness(g, hop.tables, v, closing[v]);
        break;
      }
    }
  } else {
    run.result = std::move(*short_best);
  }
  run.result.report = sim.report();
  return run;
}

GirthEstimate approx_girth_directed_weighted(const Graph& g, const DirectedWeightedParams& params,
                                             const EngineConfig& cfg, std::uint64_t seed) {
  return approx_girth_directed_weighted_run(g, params, cfg, seed).result;
}

}  // namespace cgirth
