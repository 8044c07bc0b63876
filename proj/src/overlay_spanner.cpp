#include "cgirth/overlay_spanner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "cgirth/tree_ops.hpp"

namespace cgirth {

namespace {

struct LocalEdge {
  int a, b;
  Weight w;
  bool alive = true;
};

using EdgeKey = std::tuple<Weight, int, int>;

EdgeKey key_of(const LocalEdge& e) { return {e.w, std::min(e.a, e.b), std::max(e.a, e.b)}; }

}  // namespace

std::vector<OverlayEdge> cluster_spanner(const Overlay& h, int k,
                                         const std::function<bool(NodeId, int)>& sampled,
                                         const PhaseHook& on_phase) {
  if (k < 1) throw std::invalid_argument("spanner parameter k must be at least 1");
  const int m = static_cast<int>(h.vertices.size());
  std::unordered_map<NodeId, int> local;
  for (int i = 0; i < m; ++i) local[h.vertices[i]] = i;

  std::vector<LocalEdge> edges;
  std::vector<std::vector<int>> adj(m);
  for (const auto& e : h.edges) {
    const int a = local.at(e.u), b = local.at(e.v);
    adj[a].push_back(static_cast<int>(edges.size()));
    adj[b].push_back(static_cast<int>(edges.size()));
    edges.push_back({a, b, e.w});
  }
  std::vector<char> in_spanner(edges.size(), 0);
  std::vector<int> cluster(m);
  for (int i = 0; i < m; ++i) cluster[i] = i;

  auto other = [&](int e, int v) { return edges[e].a == v ? edges[e].b : edges[e].a; };

  // Least alive edge from v into every adjacent cluster.
  auto least_per_cluster = [&](int v) {
    std::map<int, int> least;
    for (int e : adj[v]) {
      if (!edges[e].alive) continue;
      const int c = cluster[other(e, v)];
      auto it = least.find(c);
      if (it == least.end() || key_of(edges[e]) < key_of(edges[it->second])) least[c] = e;
    }
    return least;
  };

  for (int phase = 1; phase < k; ++phase) {
    if (on_phase) {
      std::vector<NodeId> centers(m, kNoNode);
      for (int v = 0; v < m; ++v) {
        if (cluster[v] >= 0) centers[v] = h.vertices[cluster[v]];
      }
      on_phase(phase, centers);
    }
    std::vector<char> survives(m, 0);
    for (int c = 0; c < m; ++c) {
      if (cluster[c] == c) survives[c] = sampled(h.vertices[c], phase) ? 1 : 0;
    }
    std::vector<int> next = cluster;
    std::vector<int> dropped;
    for (int v = 0; v < m; ++v) {
      if (cluster[v] < 0 || survives[cluster[v]]) continue;
      const auto least = least_per_cluster(v);
      int join = -1;
      for (const auto& [c, e] : least) {
        if (survives[c] && (join < 0 || key_of(edges[e]) < key_of(edges[least.at(join)]))) join = c;
      }
      std::vector<int> cut;
      if (join < 0) {
        for (const auto& [c, e] : least) {
          in_spanner[e] = 1;
          cut.push_back(c);
        }
        next[v] = -1;
      } else {
        const EdgeKey bound = key_of(edges[least.at(join)]);
        in_spanner[least.at(join)] = 1;
        cut.push_back(join);
        next[v] = join;
        for (const auto& [c, e] : least) {
          if (c != join && key_of(edges[e]) < bound) {
            in_spanner[e] = 1;
            cut.push_back(c);
          }
        }
      }
      for (int e : adj[v]) {
        if (edges[e].alive && std::find(cut.begin(), cut.end(), cluster[other(e, v)]) != cut.end()) {
          dropped.push_back(e);
        }
      }
    }
    for (int e : dropped) edges[e].alive = false;
    cluster = std::move(next);
    for (auto& e : edges) {
      if (e.alive && (cluster[e.a] < 0 || cluster[e.b] < 0 || cluster[e.a] == cluster[e.b])) {
        e.alive = false;
      }
    }
  }
  for (int v = 0; v < m; ++v) {
    if (cluster[v] < 0) continue;
    for (const auto& [c, e] : least_per_cluster(v)) in_spanner[e] = 1;
  }

  std::vector<OverlayEdge> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!in_spanner[e]) continue;
    const NodeId a = h.vertices[edges[e].a], b = h.vertices[edges[e].b];
    out.push_back({std::min(a, b), std::max(a, b), edges[e].w});
  }
  std::sort(out.begin(), out.end(),
            [](const OverlayEdge& x, const OverlayEdge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  return out;
}

std::vector<OverlayEdge> overlay_spanner(Simulation& sim, const Overlay& h, int k,
                                         const std::string& phase) {
  const NodeId n = sim.n();
  const auto& cost = sim.net().cost();
  const double p = h.vertices.empty() ? 1.0 : std::pow(static_cast<double>(h.vertices.size()), -1.0 / k);

  auto sampled = [&](NodeId c, int ph) {
    return sim.coin(c, phase + "/sample" + std::to_string(ph), p);
  };
  // Every phase starts with each clustered overlay node announcing its
  // center and whether that center survives.
  auto announce = [&](int ph, const std::vector<NodeId>& centers) {
    std::vector<std::vector<Item>> items(n);
    for (std::size_t i = 0; i < centers.size(); ++i) {
      if (centers[i] == kNoNode) continue;
      const NodeId v = h.vertices[i];
      items[v].push_back({v, centers[i], sampled(centers[i], ph) ? 1 : 0});
    }
    tree_allgather(sim, items, cost({FieldKind::kId, FieldKind::kId, FieldKind::kFlag}),
                   phase + "/clusters");
  };
  auto spanner = cluster_spanner(h, k, sampled, announce);

  std::vector<std::vector<Item>> items(n);
  for (const auto& e : spanner) items[e.u].push_back({e.u, e.v, e.w});
  tree_allgather(sim, items, cost({FieldKind::kId, FieldKind::kId, FieldKind::kDist}),
                 phase + "/broadcast");
  return spanner;
}

std::vector<std::vector<Distance>> overlay_distances(const Overlay& h) {
  const int m = static_cast<int>(h.vertices.size());
  std::unordered_map<NodeId, int> local;
  for (int i = 0; i < m; ++i) local[h.vertices[i]] = i;
  std::vector<std::vector<std::pair<int, Weight>>> adj(m);
  for (const auto& e : h.edges) {
    adj[local.at(e.u)].emplace_back(local.at(e.v), e.w);
    adj[local.at(e.v)].emplace_back(local.at(e.u), e.w);
  }
  std::vector<std::vector<Distance>> out(m, std::vector<Distance>(m));
  using Entry = std::pair<std::int64_t, int>;
  for (int s = 0; s < m; ++s) {
    auto& d = out[s];
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    d[s] = Distance(0);
    pq.emplace(0, s);
    while (!pq.empty()) {
      const auto [du, u] = pq.top();
      pq.pop();
      if (du != d[u].raw()) continue;
      for (const auto& [v, w] : adj[u]) {
        if (Distance(du + w) < d[v]) {
          d[v] = Distance(du + w);
          pq.emplace(du + w, v);
        }
      }
    }
  }
  return out;
}

}  // namespace cgirth
