#include "cgirth/girth_unweighted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cgirth/tree_ops.hpp"

namespace cgirth {

namespace {

struct TripleMsg {
  std::uint32_t bits;
  std::int32_t sidx;
  std::int64_t dist;
  NodeId parent;
};

struct CrossingProgram {
  using Message = TripleMsg;

  const SourceTables& tables;
  std::vector<std::size_t> next;
  std::vector<CrossingResult> best;

  void emit(NodeContext<Message>& ctx) {
    const NodeId v = ctx.id();
    const auto& t = tables.table(v);
    if (next[v] >= t.size()) {
      ctx.set_done();
      return;
    }
    const std::int32_t i = t[next[v]++];
    const auto& c = ctx.cost();
    ctx.send_all({static_cast<std::uint32_t>(c({FieldKind::kId, FieldKind::kDist, FieldKind::kId})), i,
                  tables.dist(v, i).value(), tables.parent(v, i)});
    ctx.set_done(next[v] >= t.size());
  }

  void init(NodeContext<Message>& ctx) { emit(ctx); }

  void step(NodeContext<Message>& ctx, std::span<const Inbound<Message>> inbox) {
    const NodeId y = ctx.id();
    const auto ports = ctx.ports();
    for (const auto& in : inbox) {
      const std::int32_t i = in.msg.sidx;
      if (!tables.has(y, i)) continue;
      const NodeId x = in.from;
      if (in.msg.parent == y || tables.parent(y, i) == x) continue;
      const Distance cand = Distance(in.msg.dist) + tables.dist(y, i) + ports[in.port].out_w;
      if (cand < best[y].value) best[y] = {cand, i, x, y};
    }
    emit(ctx);
  }
};

// Path from v to the source along parent pointers, or empty if broken.
std::vector<NodeId> parent_chain(const SourceTables& t, NodeId v, std::int32_t i) {
  std::vector<NodeId> path{v};
  const NodeId s = t.source(i);
  while (path.back() != s) {
    const NodeId p = t.parent(path.back(), i);
    if (p == kNoNode || static_cast<NodeId>(path.size()) > t.n()) return {};
    path.push_back(p);
  }
  return path;
}

}  // namespace

CrossingResult crossing_edges(Simulation& sim, const SourceTables& tables, const std::string& phase,
                              const Network* on) {
  const NodeId n = sim.n();
  CrossingProgram prog{tables, std::vector<std::size_t>(n, 0), std::vector<CrossingResult>(n)};
  sim.run(prog, phase + "/exchange", on);
  std::vector<Distance> local(n);
  for (NodeId v = 0; v < n; ++v) local[v] = prog.best[v].value;
  const auto global = tree_min(sim, local, phase + "/min");
  CrossingResult out;
  for (NodeId v = 0; v < n; ++v) {
    if (prog.best[v].value < out.value) out = prog.best[v];
  }
  if (n > 0 && global[out.x == kNoNode ? 0 : out.x] != out.value) {
    throw std::logic_error("convergecast disagrees with local minima");
  }
  return out;
}

std::optional<CycleWitness> crossing_witness(const Graph& g, const SourceTables& tables,
                                             const CrossingResult& r) {
  if (r.value.is_infinite() || r.sidx < 0) return std::nullopt;
  const auto px = parent_chain(tables, r.x, r.sidx);
  const auto py = parent_chain(tables, r.y, r.sidx);
  if (px.empty() || py.empty()) return std::nullopt;
  std::vector<std::int32_t> pos_x(g.n(), -1);
  for (std::size_t i = 0; i < px.size(); ++i) pos_x[px[i]] = static_cast<std::int32_t>(i);
  std::size_t j = 0;
  while (j < py.size() && pos_x[py[j]] < 0) ++j;
  if (j == py.size()) return std::nullopt;
  const std::size_t i = static_cast<std::size_t>(pos_x[py[j]]);
  CycleWitness w;
  // x ... u (along x's chain), then u ... y (back down y's chain), closing y -> x.
  for (std::size_t a = 0; a <= i; ++a) w.vertices.push_back(px[a]);
  for (std::size_t b = j; b-- > 0;) w.vertices.push_back(py[b]);
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

EstimateOutcome estimate(Simulation& sim, const std::vector<char>& is_source, std::int64_t k,
                         const std::string& phase) {
  DetectionParams params;
  params.k = k;
  EstimateOutcome out;
  out.tables = detect_sources(sim, is_source, params, phase + "/detect");
  out.best = crossing_edges(sim, out.tables, phase);
  return out;
}

GirthEstimate estimate(const Graph& g, const std::vector<char>& is_source, std::int64_t k,
                       const EngineConfig& cfg) {
  Simulation sim(g, cfg, 0);
  auto out = estimate(sim, is_source, k, "estimate");
  GirthEstimate r;
  r.value = out.best.value;
  r.witness = crossing_witness(g, out.tables, out.best);
  r.report = sim.report();
  return r;
}

std::int64_t ceil_root_power(std::int64_t n, std::int64_t num, std::int64_t den) {
  if (n <= 1) return n < 1 ? 0 : 1;
  auto pow_sat = [](std::int64_t b, std::int64_t e) {
    __int128 r = 1;
    const __int128 lim = static_cast<__int128>(std::numeric_limits<std::int64_t>::max());
    for (std::int64_t i = 0; i < e; ++i) {
      r *= b;
      if (r > lim) return lim;
    }
    return r;
  };
  const __int128 target = pow_sat(n, num);
  auto x = static_cast<std::int64_t>(
      std::ceil(std::exp(static_cast<double>(num) * std::log(static_cast<double>(n)) / den)));
  x = std::max<std::int64_t>(x, 1);
  while (x > 1 && pow_sat(x - 1, den) >= target) --x;
  while (pow_sat(x, den) < target) ++x;
  return x;
}

ScaleSchedule ScaleSchedule::make(NodeId n, const UnweightedParams& params) {
  if (params.f < 1) throw std::invalid_argument("f must be at least 1");
  if (params.c < 1.0) throw std::invalid_argument("c must be at least 1");
  ScaleSchedule s;
  s.f = params.f;
  const double log_n = std::log2(std::max<double>(n, 2));
  const double kc = params.k_const > 0 ? params.k_const : 12.0 * (params.c + 3.0);
  const double pc = params.p_const > 0 ? params.p_const : params.c + 3.0;
  s.k = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(kc * std::pow(n, 1.0 / params.f) * log_n)));
  s.p.assign(params.f, 1.0);
  for (int i = 1; i < params.f; ++i) {
    s.p[i] = std::min(pc * std::pow(n, -static_cast<double>(i) / params.f) * log_n, 1.0);
  }
  return s;
}

UnweightedRun approx_girth_unweighted_run(const Graph& g, const UnweightedParams& params,
                                          const EngineConfig& cfg, std::uint64_t seed) {
  if (g.directed() || g.weighted()) throw std::invalid_argument("expects an unweighted undirected graph");
  const NodeId n = g.n();
  UnweightedRun run;
  run.schedule = ScaleSchedule::make(n, params);
  Simulation sim(g, cfg, seed);

  std::optional<EstimateOutcome> best;
  auto consider = [&](EstimateOutcome&& e) {
    run.levels.push_back(e.best.value);
    if (!best || e.best.value < best->best.value) best = std::move(e);
  };

  const std::vector<char> all(n, 1);
  if (n <= params.f) {
    run.samples.push_back(all);
    consider(estimate(sim, all, n, "level0"));
  } else {
    for (int i = 0; i < params.f; ++i) {
      std::vector<char> a(n, 1);
      if (i > 0) {
        const std::string tag = "sample" + std::to_string(i);
        for (NodeId v = 0; v < n; ++v) a[v] = sim.coin(v, tag, run.schedule.p[i]) ? 1 : 0;
      }
      consider(estimate(sim, a, run.schedule.k, "level" + std::to_string(i)));
      run.samples.push_back(std::move(a));
    }
  }
  run.result.value = best->best.value;
  run.result.witness = crossing_witness(g, best->tables, best->best);
  run.result.report = sim.report();
  return run;
}

GirthEstimate approx_girth_unweighted(const Graph& g, const UnweightedParams& params,
                                      const EngineConfig& cfg, std::uint64_t seed) {
  return approx_girth_unweighted_run(g, params, cfg, seed).result;
}

}  // namespace cgirth
