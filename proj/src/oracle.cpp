#include "cgirth/oracle.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>

namespace cgirth {

ShortestPaths shortest_paths(const Graph& g, NodeId s, bool reverse) {
  const NodeId n = g.n();
  ShortestPaths sp;
  sp.source = s;
  sp.dist.assign(n, Distance::infinity());
  sp.parent.assign(n, kNoNode);
  sp.dist[s] = Distance::zero();
  auto arcs = [&](NodeId v) { return reverse ? g.in(v) : g.out(v); };

  if (!g.weighted()) {
    std::vector<NodeId> queue{s};
    queue.reserve(n);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId v = queue[head];
      const Distance next = sp.dist[v] + 1;
      for (const Arc& a : arcs(v)) {
        if (sp.dist[a.to].is_infinite()) {
          sp.dist[a.to] = next;
          sp.parent[a.to] = v;
          queue.push_back(a.to);
        }
      }
    }
    return sp;
  }

  using Item = std::pair<std::int64_t, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != sp.dist[v].raw()) continue;
    for (const Arc& a : arcs(v)) {
      const Distance nd(d + a.w);
      if (nd < sp.dist[a.to]) {
        sp.dist[a.to] = nd;
        sp.parent[a.to] = v;
        pq.push({nd.raw(), a.to});
      }
    }
  }
  return sp;
}

std::vector<Distance> hop_distances(const Graph& g, NodeId s) {
  std::vector<Distance> dist(g.n(), Distance::infinity());
  dist[s] = Distance::zero();
  std::vector<NodeId> queue{s};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    auto visit = [&](const Arc& a) {
      if (dist[a.to].is_infinite()) {
        dist[a.to] = dist[v] + 1;
        queue.push_back(a.to);
      }
    };
    for (const Arc& a : g.out(v)) visit(a);
    if (g.directed()) {
      for (const Arc& a : g.in(v)) visit(a);
    }
  }
  return dist;
}

DistanceOracle hop_limited_distances(const Graph& g, NodeId s, std::int64_t h) {
  DistanceOracle o;
  o.source = s;
  o.hop_bound = h;
  o.dist.assign(g.n(), Distance::infinity());
  o.dist[s] = Distance::zero();
  std::vector<Distance> next;
  for (std::int64_t round = 0; round < h; ++round) {
    next = o.dist;
    bool changed = false;
    for (const Edge& e : g.edges()) {
      auto relax = [&](NodeId a, NodeId b) {
        const Distance cand = o.dist[a] + e.w;
        if (cand < next[b]) {
          next[b] = cand;
          changed = true;
        }
      };
      relax(e.u, e.v);
      if (!g.directed()) relax(e.v, e.u);
    }
    o.dist.swap(next);
    if (!changed) break;
  }
  return o;
}

Distance hop_diameter(const Graph& g) {
  Distance best = Distance::zero();
  for (NodeId s = 0; s < g.n(); ++s) {
    for (Distance d : hop_distances(g, s)) {
      if (d.is_infinite()) return Distance::infinity();
      best = std::max(best, d);
    }
  }
  return best;
}

namespace {

std::vector<NodeId> path_from_root(const std::vector<NodeId>& parent, NodeId v) {
  std::vector<NodeId> p;
  for (NodeId x = v; x != kNoNode; x = parent[x]) p.push_back(x);
  std::reverse(p.begin(), p.end());
  return p;
}

GirthEstimate undirected_girth(const Graph& g) {
  GirthEstimate best;
  NodeId best_root = kNoNode;
  Edge best_edge{};
  for (NodeId r = 0; r < g.n(); ++r) {
    const ShortestPaths sp = shortest_paths(g, r);
    for (const Edge& e : g.edges()) {
      if (sp.dist[e.u].is_infinite()) continue;
      if (sp.parent[e.u] == e.v || sp.parent[e.v] == e.u) continue;
      const Distance cand = sp.dist[e.u] + sp.dist[e.v] + e.w;
      if (cand < best.value) {
        best.value = cand;
        best_root = r;
        best_edge = e;
      }
    }
  }
  if (best_root == kNoNode) return best;

  // Tree paths root->u and root->v diverge at their last common vertex; the
  // two branches plus the edge form a simple cycle of weight at most the
  // candidate, and exactly the girth when the candidate is minimal.
  const ShortestPaths sp = shortest_paths(g, best_root);
  const auto pu = path_from_root(sp.parent, best_edge.u);
  const auto pv = path_from_root(sp.parent, best_edge.v);
  std::size_t lca = 0;
  while (lca + 1 < pu.size() && lca + 1 < pv.size() && pu[lca + 1] == pv[lca + 1]) ++lca;
  CycleWitness c;
  for (std::size_t i = lca; i < pu.size(); ++i) c.vertices.push_back(pu[i]);
  for (std::size_t i = pv.size(); i-- > lca + 1;) c.vertices.push_back(pv[i]);
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    c.weight += *g.weight(c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]);
  }
  c.hops = static_cast<std::int64_t>(c.vertices.size());
  best.witness = std::move(c);
  return best;
}

GirthEstimate directed_girth(const Graph& g) {
  GirthEstimate best;
  NodeId best_s = kNoNode, best_u = kNoNode;
  for (NodeId s = 0; s < g.n(); ++s) {
    if (g.in(s).empty() || g.out(s).empty()) continue;
    const ShortestPaths sp = shortest_paths(g, s);
    for (const Arc& a : g.in(s)) {
      const Distance cand = sp.dist[a.to] + a.w;
      if (cand < best.value) {
        best.value = cand;
        best_s = s;
        best_u = a.to;
      }
    }
  }
  if (best_s == kNoNode) return best;
  const ShortestPaths sp = shortest_paths(g, best_s);
  CycleWitness c;
  c.vertices = path_from_root(sp.parent, best_u);
  c.weight = best.value.value();
  c.hops = static_cast<std::int64_t>(c.vertices.size());
  best.witness = std::move(c);
  return best;
}

}  // namespace

GirthEstimate exact_girth(const Graph& g) {
  return g.directed() ? directed_girth(g) : undirected_girth(g);
}

Distance shortest_cycle_through(const Graph& g, NodeId v) {
  if (!g.directed()) {
    Distance best;
    const ShortestPaths sp = shortest_paths(g, v);
    // Only cycles through the root: non-tree edges whose endpoints lie in
    // different root subtrees, or touch the root itself.
    std::vector<NodeId> branch(g.n(), kNoNode);
    for (NodeId x = 0; x < g.n(); ++x) {
      if (sp.dist[x].is_infinite() || x == v) continue;
      NodeId y = x;
      while (sp.parent[y] != v) y = sp.parent[y];
      branch[x] = y;
    }
    for (const Edge& e : g.edges()) {
      if (sp.dist[e.u].is_infinite()) continue;
      if (sp.parent[e.u] == e.v || sp.parent[e.v] == e.u) continue;
      if (e.u != v && e.v != v && branch[e.u] == branch[e.v]) continue;
      best = min(best, sp.dist[e.u] + sp.dist[e.v] + e.w);
    }
    return best;
  }
  const ShortestPaths sp = shortest_paths(g, v);
  Distance best;
  for (const Arc& a : g.in(v)) best = min(best, sp.dist[a.to] + a.w);
  return best;
}

std::vector<SourceEntry> k_closest(std::span<const Distance> dist_to_v,
                                   std::span<const NodeId> sources, std::int64_t k) {
  std::vector<SourceEntry> all;
  for (NodeId s : sources) {
    if (dist_to_v[s].is_finite()) all.push_back({s, dist_to_v[s], kNoNode});
  }
  std::sort(all.begin(), all.end(), [](const SourceEntry& a, const SourceEntry& b) {
    return closer(a.dist, a.source, b.dist, b.source);
  });
  if (static_cast<std::int64_t>(all.size()) > k) all.resize(static_cast<std::size_t>(k));
  return all;
}

}  // namespace cgirth
