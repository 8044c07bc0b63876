#include "cgirth/bounded_hop.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cgirth {

namespace {

constexpr std::int64_t kEpsDen = std::int64_t{1} << 20;

std::int64_t eps_units(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const auto u = static_cast<std::int64_t>(std::llround(eps * static_cast<double>(kEpsDen)));
  return std::max<std::int64_t>(u, 1);
}

}  // namespace

Scale Scale::dyadic(std::int64_t h, double eps, int i) {
  if (h < 1 || i < 0 || i > 40) throw std::invalid_argument("bad scale parameters");
  Scale s;
  s.num = eps_units(eps) << i;
  s.den = 2 * h * kEpsDen;
  const std::int64_t g = std::gcd(s.num, s.den);
  s.num /= g;
  s.den /= g;
  return s;
}

Weight Scale::up(Weight w) const {
  const __int128 x = static_cast<__int128>(w) * den;
  return static_cast<Weight>((x + num - 1) / num);
}

Distance Scale::down(Distance d) const {
  if (d.is_infinite()) return d;
  return Distance(static_cast<std::int64_t>(static_cast<__int128>(d.value()) * num / den));
}

Graph scale_weights(const Graph& g, const Scale& s) {
  return g.map_weights([&](Weight w) { return s.up(w); });
}

Graph scale_weights(const Graph& g, std::int64_t h, double eps, int i) {
  return scale_weights(g, Scale::dyadic(h, eps, i));
}

std::int64_t hop_cap(std::int64_t h, double eps) {
  const std::int64_t u = eps_units(eps);
  const __int128 extra = (static_cast<__int128>(2 * h) * kEpsDen + u - 1) / u;
  return h + static_cast<std::int64_t>(extra);
}

std::vector<Scale> hop_scales(std::int64_t h, Weight max_weight, double eps) {
  std::vector<Scale> out{Scale{}};
  const auto top = static_cast<int>(std::floor(std::log2(static_cast<double>(h) * max_weight))) + 1;
  for (int i = 0; i <= top; ++i) {
    const Scale s = Scale::dyadic(h, eps, i);
    if (s.num > s.den) out.push_back(s);
  }
  return out;
}

BoundedHopResult bounded_hop_multisource(Simulation& sim, const std::vector<char>& is_source,
                                         std::int64_t h, double eps, const std::string& phase,
                                         Propagation direction) {
  const Graph& g = sim.graph();
  const NodeId n = g.n();
  BoundedHopResult out;
  out.scales = hop_scales(h, g.max_weight(), eps);
  out.cap = hop_cap(h, eps);
  out.tables = SourceTables(n, members(is_source));
  const std::int32_t S = out.tables.source_count();

  DetectionParams params;
  params.k = std::max<std::int64_t>(S, 1);
  params.cap = Distance(out.cap);
  params.paced = true;
  params.direction = direction;

  auto& best = out.tables.raw_dist();
  auto& parent = out.tables.raw_parent();
  for (std::size_t j = 0; j < out.scales.size(); ++j) {
    const Scale& sc = out.scales[j];
    const std::string tag = phase + "/scale" + std::to_string(j);
    SourceTables t;
    if (sc.num == sc.den) {
      t = detect_sources(sim, is_source, params, tag);
    } else {
      const OwnedNetwork scaled(scale_weights(g, sc));
      t = detect_sources(sim, is_source, params, tag, &scaled.net);
    }
    for (NodeId v = 0; v < n; ++v) {
      for (std::int32_t i : t.table(v)) {
        const Distance d = sc.down(t.dist(v, i));
        const std::size_t slot = static_cast<std::size_t>(v) * S + i;
        if (d.raw() < best[slot]) {
          best[slot] = d.raw();
          parent[slot] = t.parent(v, i);
        }
      }
    }
  }
  auto& member = out.tables.raw_member();
  for (std::size_t s = 0; s < member.size(); ++s) member[s] = Distance(best[s]).is_finite() ? 1 : 0;
  out.tables.finalize();
  return out;
}

}  // namespace cgirth
