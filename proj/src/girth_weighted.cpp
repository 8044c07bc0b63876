#include "cgirth/girth_weighted.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace cgirth {

DisApproxResult dis_approx(Simulation& sim, const std::vector<char>& is_source, std::int64_t h,
                           int k, double eps, const std::string& phase) {
  const NodeId n = sim.n();
  DisApproxResult out;
  out.hop = bounded_hop_multisource(sim, is_source, 2 * h, eps, phase + "/hop");
  const SourceTables& hop = out.hop.tables;
  const auto& sources = hop.sources();
  const auto S = static_cast<std::int32_t>(sources.size());

  out.overlay.vertices = sources;
  for (std::int32_t a = 0; a < S; ++a) {
    for (std::int32_t b = a + 1; b < S; ++b) {
      const Distance d = hop.dist(sources[b], a);
      if (d.is_finite()) out.overlay.edges.push_back({sources[a], sources[b], d.value()});
    }
  }
  out.spanner = overlay_spanner(sim, out.overlay, k, phase + "/spanner");
  const auto dh = overlay_distances(Overlay{sources, out.spanner});

  out.tables = SourceTables(n, sources);
  for (NodeId v = 0; v < n; ++v) {
    const auto& mine = hop.table(v);
    for (std::int32_t a = 0; a < S; ++a) {
      if (sources[a] == v) {
        out.tables.set(v, a, Distance(0), v);
        continue;
      }
      Distance best;
      std::int32_t arg = -1;
      for (std::int32_t b : mine) {
        if (sources[b] == v) continue;
        const Distance cand = dh[a][b] + hop.dist(v, b);
        if (cand < best) {
          best = cand;
          arg = b;
        }
      }
      if (arg >= 0) out.tables.set(v, a, best, hop.parent(v, arg));
    }
  }
  out.tables.finalize();
  return out;
}

EstimateOutcome bounded_girth_2approx(Simulation& sim, const Network* on, std::int64_t cap,
                                      const TwoApproxParams& params, const std::string& phase) {
  const NodeId n = sim.n();
  const auto sched = ScaleSchedule::make(
      n, UnweightedParams{.f = 2, .c = params.c, .k_const = params.k_const, .p_const = params.p_const});
  DetectionParams dp;
  dp.k = n <= 2 ? n : sched.k;
  dp.cap = Distance(cap);
  dp.paced = true;

  std::optional<EstimateOutcome> best;
  // A level sampled with probability 1 repeats level 0 exactly.
  const int levels = n <= 2 || sched.p[1] >= 1.0 ? 1 : 2;
  for (int i = 0; i < levels; ++i) {
    const std::string tag = phase + "/level" + std::to_string(i);
    std::vector<char> a(n, 1);
    if (i > 0) {
      for (NodeId v = 0; v < n; ++v) a[v] = sim.coin(v, tag + "/sample", sched.p[i]) ? 1 : 0;
    }
    EstimateOutcome e;
    e.tables = detect_sources(sim, a, dp, tag + "/detect", on);
    e.best = crossing_edges(sim, e.tables, tag, on);
    if (!best || e.best.value < best->best.value) best = std::move(e);
  }
  return std::move(*best);
}

GirthEstimate bounded_girth_2approx(const Graph& g, std::int64_t cap, const TwoApproxParams& params,
                                    const EngineConfig& cfg, std::uint64_t seed) {
  Simulation sim(g, cfg, seed);
  const auto e = bounded_girth_2approx(sim, nullptr, cap, params, "short");
  GirthEstimate r;
  r.value = e.best.value;
  r.witness = crossing_witness(g, e.tables, e.best);
  r.report = sim.report();
  return r;
}

WeightedSchedule WeightedSchedule::make(NodeId n, Weight max_weight, const WeightedParams& params) {
  if (params.k < 1) throw std::invalid_argument("k must be at least 1");
  if (!(params.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  WeightedSchedule s;
  s.h = params.h > 0 ? params.h : std::max<std::int64_t>(ceil_root_power(n, params.k + 1, 2 * params.k + 1), 1);
  s.h_star = hop_cap(s.h, params.eps);
  const double sc = params.sample_const > 0 ? params.sample_const : params.c + 2.0;
  s.p = std::min(sc * std::log2(std::max<double>(n, 2)) / static_cast<double>(s.h), 1.0);
  s.scale_count = std::max(
      1, static_cast<int>(std::ceil(std::log2(static_cast<double>(s.h) * static_cast<double>(max_weight)))));
  return s;
}

WeightedRun approx_girth_weighted_run(const Graph& g, const WeightedParams& params,
                                      const EngineConfig& cfg, std::uint64_t seed) {
  if (g.directed()) throw std::invalid_argument("expects an undirected graph");
  const NodeId n = g.n();
  WeightedRun run;
  run.schedule = WeightedSchedule::make(n, g.max_weight(), params);
  const auto& sch = run.schedule;
  Simulation sim(g, cfg, seed);

  // Long cycles: approximate distances from a sample, then crossing edges.
  run.sample.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) run.sample[v] = sim.coin(v, "long/sample", sch.p) ? 1 : 0;
  auto dis = dis_approx(sim, run.sample, sch.h, params.k, params.eps, "long");
  run.overlay_edges = dis.overlay.edges.size();
  run.spanner_edges = dis.spanner.size();
  const CrossingResult long_best = crossing_edges(sim, dis.tables, "long/crossing");
  run.long_value = long_best.value;

  // Short cycles: hop-limited 2-approximations on rescaled copies. Scales
  // with delta < 1 all reduce to one run on the original weights.
  std::optional<EstimateOutcome> short_best;
  bool unscaled_done = false;
  for (int i = 1; i <= sch.scale_count; ++i) {
    Scale sc = Scale::dyadic(sch.h, params.eps, i);
    if (sc.below_one()) {
      if (unscaled_done) continue;
      unscaled_done = true;
      sc = Scale{};
    }
    const std::string tag = "short/scale" + std::to_string(i);
    EstimateOutcome e;
    if (sc.num == sc.den) {
      e = bounded_girth_2approx(sim, nullptr, sch.h_star, params.short_cycles, tag);
    } else {
      const OwnedNetwork scaled(scale_weights(g, sc));
      e = bounded_girth_2approx(sim, &scaled.net, sch.h_star, params.short_cycles, tag);
    }
    e.best.value = sc.down(e.best.value);
    run.short_values.push_back(e.best.value);
    if (!short_best || e.best.value < short_best->best.value) short_best = std::move(e);
  }
  run.short_value = short_best->best.value;

  if (run.long_value <= run.short_value) {
    run.result.value = run.long_value;
    run.result.witness = crossing_witness(g, dis.tables, long_best);
  } else {
    run.result.value = run.short_value;
    run.result.witness = crossing_witness(g, short_best->tables, short_best->best);
  }
  run.result.report = sim.report();
  return run;
}

GirthEstimate approx_girth_weighted(const Graph& g, const WeightedParams& params,
                                    const EngineConfig& cfg, std::uint64_t seed) {
  return approx_girth_weighted_run(g, params, cfg, seed).result;
}

}  // namespace cgirth
