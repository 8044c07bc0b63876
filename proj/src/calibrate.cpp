#include "cgirth/calibrate.hpp"

#include <cmath>

#include "cgirth/bounded_hop.hpp"
#include "cgirth/generators.hpp"
#include "cgirth/oracle.hpp"
#include "cgirth/overlay_spanner.hpp"
#include "cgirth/random.hpp"
#include "cgirth/simulation.hpp"
#include "cgirth/source_detection.hpp"

namespace cgirth {

namespace {

Overlay dense_overlay(const std::vector<NodeId>& vertices, double density, Weight w, std::uint64_t seed) {
  Overlay h;
  h.vertices = vertices;
  Rng rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Weight> weight(1, w);
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (coin(rng) < density) h.edges.push_back({vertices[a], vertices[b], weight(rng)});
    }
  }
  return h;
}

std::vector<char> sample(NodeId n, double p, std::uint64_t seed, std::string_view tag) {
  std::vector<char> s(n, 0);
  for (NodeId v = 0; v < n; ++v) s[v] = node_coin(seed, v, phase_tag(tag), p);
  s[0] = 1;
  return s;
}

}  // namespace

Calibration calibrate(const std::vector<NodeId>& ns, std::uint64_t seed, const EngineConfig& cfg) {
  Calibration cal;
  for (NodeId n : ns) {
    const double root = std::sqrt(static_cast<double>(n));
    const Graph g = generate(parse_gen_spec("regular:n=" + std::to_string(n) + ",d=4"), seed).graph;
    const Graph gw = generate(parse_gen_spec("regular:n=" + std::to_string(n) + ",d=4,W=10"), seed).graph;
    const auto diameter = static_cast<double>(hop_diameter(g).value());

    {
      Simulation sim(g, cfg, seed);
      DetectionParams params;
      params.k = static_cast<std::int64_t>(std::ceil(root));
      detect_sources(sim, sample(n, 1.0 / root, seed, "cal/sd"), params, "sd");
      cal.points.push_back({"source_detection", n, static_cast<double>(params.k) + diameter,
                            sim.report().rounds});
    }
    {
      Simulation sim(gw, cfg, seed);
      const auto s = sample(n, 1.0 / root, seed, "cal/bh");
      const auto h = static_cast<std::int64_t>(std::ceil(root));
      const auto r = bounded_hop_multisource(sim, s, h, 0.5, "bh");
      const auto count = static_cast<double>(members(s).size());
      cal.points.push_back({"bounded_hop", n,
                            static_cast<double>(r.scales.size()) * (count + static_cast<double>(r.cap)),
                            sim.report().rounds});
    }
    for (int k : {2, 3}) {
      Simulation sim(g, cfg, seed);
      const auto vs = members(sample(n, 2.0 / root, seed, "cal/sp"));
      const Overlay h = dense_overlay(vs, 0.5, 100, derive_seed(seed, n, k));
      const auto sp = overlay_spanner(sim, h, k, "sp");
      cal.points.push_back({"overlay_spanner", n,
                            static_cast<double>(k) * static_cast<double>(vs.size()) +
                                static_cast<double>(sp.size()) + diameter,
                            sim.report().rounds});
    }
  }
  for (const auto& p : cal.points) {
    auto& fit = cal.fits[p.primitive];
    fit.max_ratio = std::max(fit.max_ratio, static_cast<double>(p.rounds) / p.bound);
    ++fit.points;
  }
  for (auto& [name, fit] : cal.fits) {
    double xy = 0, xx = 0;
    for (const auto& p : cal.points) {
      if (p.primitive != name) continue;
      xy += p.bound * static_cast<double>(p.rounds);
      xx += p.bound * p.bound;
    }
    fit.constant = xy / xx;
  }

  for (int m : {50, 100, 200, 400}) {
    std::vector<NodeId> vs(m);
    for (int i = 0; i < m; ++i) vs[i] = i;
    for (int k : {2, 3, 4}) {
      for (std::uint64_t t = 0; t < 3; ++t) {
        const Overlay h = dense_overlay(vs, 0.6, 1000, derive_seed(seed, m * 10 + k, t));
        const double p = std::pow(static_cast<double>(m), -1.0 / k);
        const std::uint64_t s = derive_seed(seed, t, phase_tag("cal/cluster"));
        const auto sp = cluster_spanner(h, k, [&](NodeId c, int phase) {
          return node_coin(s, c, static_cast<std::uint64_t>(phase), p);
        });
        const double ratio = static_cast<double>(sp.size()) /
                             (k * std::pow(static_cast<double>(m), 1.0 + 1.0 / k));
        cal.spanner.push_back({m, k, sp.size(), ratio});
        cal.spanner_max_ratio = std::max(cal.spanner_max_ratio, ratio);
      }
    }
  }
  return cal;
}

}  // namespace cgirth
