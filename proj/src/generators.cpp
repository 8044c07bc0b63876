#include "cgirth/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace cgirth {

double GenSpec::get(const std::string& key, double fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw GeneratorError("bad value for '" + key + "': " + it->second);
  }
}

double GenSpec::require(const std::string& key) const {
  if (!params.count(key)) throw GeneratorError(kind + ": missing parameter '" + key + "'");
  return get(key, 0);
}

std::string GenSpec::to_string() const {
  std::string s = kind;
  char sep = ':';
  for (const auto& [k, v] : params) {
    s += sep;
    s += k + "=" + v;
    sep = ',';
  }
  return s;
}

GenSpec parse_gen_spec(const std::string& text) {
  GenSpec spec;
  auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (spec.kind.empty()) throw GeneratorError("empty generator kind");
  static const std::set<std::string> kinds{"uniform", "planted", "chords", "grid", "regular"};
  if (!kinds.count(spec.kind)) throw GeneratorError("unknown generator kind '" + spec.kind + "'");
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw GeneratorError("expected key=value in generator spec, got '" + item + "'");
    }
    spec.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return spec;
}

namespace {

using Rng = std::mt19937_64;

NodeId as_count(double v, const char* what) {
  if (v < 0 || v != std::floor(v) || v > 1e7) {
    throw GeneratorError(std::string("invalid ") + what);
  }
  return static_cast<NodeId>(v);
}

Weight draw_weight(Rng& rng, Weight max_w) {
  if (max_w <= 1) return 1;
  return std::uniform_int_distribution<Weight>(1, max_w)(rng);
}

// Is there a u -> target path of weight <= limit in g?
bool within(const Graph& g, NodeId from, NodeId target, Weight limit) {
  if (limit < 0) return false;
  if (from == target) return true;
  std::unordered_map<NodeId, Weight> dist;
  using Item = std::pair<Weight, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[from] = 0;
  pq.push({0, from});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (dist[v] != d) continue;
    if (v == target) return true;
    for (const Arc& a : g.out(v)) {
      const Weight nd = d + a.w;
      if (nd > limit) continue;
      auto it = dist.find(a.to);
      if (it == dist.end() || nd < it->second) {
        dist[a.to] = nd;
        pq.push({nd, a.to});
      }
    }
  }
  return false;
}

Generated gen_uniform(const GenSpec& s, Rng& rng) {
  const NodeId n = as_count(s.require("n"), "n");
  const double p = s.require("p");
  const bool directed = s.get("directed", 0) != 0;
  const auto W = static_cast<Weight>(s.get("W", 1));
  if (p < 0 || p > 1) throw GeneratorError("uniform: p must lie in [0,1]");
  if (W < 1) throw GeneratorError("W must be >= 1");
  Generated out{Graph(n, directed, W > 1), std::nullopt, {}};
  std::bernoulli_distribution coin(p);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v) continue;
      if (coin(rng)) out.graph.add_edge(u, v, draw_weight(rng, W));
    }
  }
  return out;
}

Generated gen_planted(const GenSpec& s, Rng& rng) {
  const NodeId n = as_count(s.require("n"), "n");
  const NodeId len = as_count(s.require("len"), "len");
  const double deg = s.get("deg", 3.0);
  const bool directed = s.get("directed", 0) != 0;
  const auto W = static_cast<Weight>(s.get("W", 1));
  const auto cw = static_cast<Weight>(s.get("cw", static_cast<double>(W)));
  if (len > n) throw GeneratorError("planted: cycle longer than n");
  if (len < (directed ? 2 : 3)) throw GeneratorError("planted: cycle too short");
  if (W < 1 || cw < 1 || cw > std::max<Weight>(W, 1)) throw GeneratorError("planted: bad weights");

  Generated out{Graph(n, directed, W > 1), std::nullopt, {}};
  Graph& g = out.graph;
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  Weight planted = 0;
  for (NodeId i = 0; i < len; ++i) {
    const Weight w = draw_weight(rng, cw);
    g.add_edge(perm[i], perm[(i + 1) % len], w);
    planted += w;
  }
  out.planted_weight = planted;
  out.planted_cycle.assign(perm.begin(), perm.begin() + len);

  for (NodeId i = len; i < n; ++i) {
    const NodeId anchor = perm[std::uniform_int_distribution<NodeId>(0, i - 1)(rng)];
    const Weight w = draw_weight(rng, W);
    if (directed && (rng() & 1)) {
      g.add_edge(anchor, perm[i], w);
    } else {
      g.add_edge(perm[i], anchor, w);
    }
  }

  // Extra edges are kept only if every cycle they close is strictly heavier
  // than the planted one, so the planted cycle stays the unique minimum.
  const auto target = static_cast<std::int64_t>(std::llround(deg * n / 2.0));
  const std::int64_t wanted = std::max<std::int64_t>(0, target - static_cast<std::int64_t>(g.m()));
  std::int64_t added = 0;
  std::uniform_int_distribution<NodeId> pick(0, std::max<NodeId>(n - 1, 0));
  for (std::int64_t attempt = 0; attempt < 30 * wanted && added < wanted; ++attempt) {
    const NodeId u = pick(rng), v = pick(rng);
    if (u == v || g.has_edge(u, v) || (!directed && g.has_edge(v, u))) continue;
    const Weight w = draw_weight(rng, W);
    if (within(g, v, u, planted - w)) continue;
    g.add_edge(u, v, w);
    ++added;
  }
  return out;
}

Generated gen_chords(const GenSpec& s, Rng& rng) {
  const NodeId n = as_count(s.require("n"), "n");
  const NodeId chords = as_count(s.get("chords", 0), "chords");
  const auto W = static_cast<Weight>(s.get("W", 1));
  if (n < 3) throw GeneratorError("chords: n must be >= 3");
  const std::int64_t max_chords = static_cast<std::int64_t>(n) * (n - 1) / 2 - n;
  if (chords > max_chords) throw GeneratorError("chords: too many chords");
  Generated out{Graph(n, false, W > 1), std::nullopt, {}};
  for (NodeId i = 0; i < n; ++i) out.graph.add_edge(i, (i + 1) % n, draw_weight(rng, W));
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  NodeId added = 0;
  while (added < chords) {
    const NodeId u = pick(rng), v = pick(rng);
    if (u == v || out.graph.has_edge(u, v)) continue;
    out.graph.add_edge(u, v, draw_weight(rng, W));
    ++added;
  }
  return out;
}

Generated gen_grid(const GenSpec& s, Rng& rng) {
  const NodeId rows = as_count(s.require("rows"), "rows");
  const NodeId cols = as_count(s.require("cols"), "cols");
  const auto W = static_cast<Weight>(s.get("W", 1));
  if (rows < 1 || cols < 1) throw GeneratorError("grid: empty");
  Generated out{Graph(rows * cols, false, W > 1), std::nullopt, {}};
  for (NodeId r = 0; r < rows; ++r) {
    for (NodeId c = 0; c < cols; ++c) {
      const NodeId v = r * cols + c;
      if (c + 1 < cols) out.graph.add_edge(v, v + 1, draw_weight(rng, W));
      if (r + 1 < rows) out.graph.add_edge(v, v + cols, draw_weight(rng, W));
    }
  }
  return out;
}

Generated gen_regular(const GenSpec& s, Rng& rng) {
  const NodeId n = as_count(s.require("n"), "n");
  const NodeId d = as_count(s.require("d"), "d");
  const bool directed = s.get("directed", 0) != 0;
  const auto W = static_cast<Weight>(s.get("W", 1));
  if (d < 2 || d % 2 != 0) throw GeneratorError("regular: d must be even and >= 2");
  if (n < d + 1) throw GeneratorError("regular: n too small for d");
  Generated out{Graph(n, directed, W > 1), std::nullopt, {}};
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (NodeId round = 0; round < d / 2; ++round) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (NodeId i = 0; i < n; ++i) {
      NodeId u = perm[i], v = perm[(i + 1) % n];
      if (out.graph.has_edge(u, v) || out.graph.has_edge(v, u)) continue;
      if (directed && (rng() & 1)) std::swap(u, v);
      out.graph.add_edge(u, v, draw_weight(rng, W));
    }
  }
  return out;
}

}  // namespace

Generated generate(const GenSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  if (spec.kind == "uniform") return gen_uniform(spec, rng);
  if (spec.kind == "planted") return gen_planted(spec, rng);
  if (spec.kind == "chords") return gen_chords(spec, rng);
  if (spec.kind == "grid") return gen_grid(spec, rng);
  if (spec.kind == "regular") return gen_regular(spec, rng);
  throw GeneratorError("unknown generator kind '" + spec.kind + "'");
}

Graph subdivide(const Graph& g) {
  NodeId total = g.n();
  for (const Edge& e : g.edges()) total += static_cast<NodeId>(e.w - 1);
  Graph out(total, g.directed(), false);
  NodeId next = g.n();
  for (const Edge& e : g.edges()) {
    NodeId prev = e.u;
    for (Weight i = 1; i < e.w; ++i) {
      out.add_edge(prev, next);
      prev = next++;
    }
    out.add_edge(prev, e.v);
  }
  return out;
}

}  // namespace cgirth
