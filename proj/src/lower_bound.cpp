#include "cgirth/lower_bound.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cgirth/engine.hpp"
#include "cgirth/oracle.hpp"
#include "cgirth/random.hpp"

namespace cgirth {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Nonzero vectors of F_p^dim whose first nonzero coordinate is 1, in
// lexicographic order.
std::vector<std::vector<int>> projective_points(int p, int dim) {
  std::vector<std::vector<int>> pts;
  std::vector<int> x(dim, 0);
  std::int64_t total = 1;
  for (int i = 0; i < dim; ++i) total *= p;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (int i = dim - 1; i >= 0; --i) {
      x[i] = static_cast<int>(c % p);
      c /= p;
    }
    const auto first = std::find_if(x.begin(), x.end(), [](int v) { return v != 0; });
    if (first != x.end() && *first == 1) pts.push_back(x);
  }
  return pts;
}

int inverse_mod(int x, int p) {
  for (int y = 1; y < p; ++y) {
    if (x * y % p == 1) return y;
  }
  throw std::logic_error("no inverse");
}

std::vector<int> normalize(std::vector<int> x, int p) {
  const auto first = std::find_if(x.begin(), x.end(), [](int v) { return v != 0; });
  if (first == x.end()) return x;
  const int inv = inverse_mod(*first, p);
  for (int& v : x) v = v * inv % p;
  return x;
}

HostBipartite projective_plane(int p) {
  const auto pts = projective_points(p, 3);
  HostBipartite h;
  h.a = static_cast<int>(pts.size());
  h.k = 3;
  h.kind = HostKind::kProjectivePlane;
  for (int l = 0; l < h.a; ++l) {
    for (int r = 0; r < h.a; ++r) {
      int dot = 0;
      for (int i = 0; i < 3; ++i) dot += pts[l][i] * pts[r][i];
      if (dot % p == 0) h.edges.emplace_back(l, r);
    }
  }
  return h;
}

// Points and totally isotropic lines of PG(3, p) under the symplectic form
// x0 y1 - x1 y0 + x2 y3 - x3 y2.
HostBipartite symplectic_quadrangle(int p) {
  const auto pts = projective_points(p, 4);
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) index[pts[i]] = i;
  auto form = [&](const std::vector<int>& x, const std::vector<int>& y) {
    const int v = x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
    return ((v % p) + p) % p;
  };
  std::set<std::vector<int>> lines;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (form(pts[i], pts[j]) != 0) continue;
      std::vector<int> line;
      for (int alpha = 0; alpha < p; ++alpha) {
        for (int beta = 0; beta < p; ++beta) {
          if (alpha == 0 && beta == 0) continue;
          std::vector<int> z(4);
          for (int c = 0; c < 4; ++c) z[c] = (alpha * pts[i][c] + beta * pts[j][c]) % p;
          line.push_back(index.at(normalize(z, p)));
        }
      }
      std::sort(line.begin(), line.end());
      line.erase(std::unique(line.begin(), line.end()), line.end());
      lines.insert(line);
    }
  }
  HostBipartite h;
  h.a = static_cast<int>(pts.size());
  h.k = 4;
  h.kind = HostKind::kQuadrangle;
  if (lines.size() != pts.size()) throw std::logic_error("quadrangle line count");
  int r = 0;
  for (const auto& line : lines) {
    for (int l : line) h.edges.emplace_back(l, r);
    ++r;
  }
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

HostBipartite complete_bipartite(int a, int k) {
  HostBipartite h;
  h.a = a;
  h.k = k;
  h.kind = HostKind::kComplete;
  for (int l = 0; l < a; ++l) {
    for (int r = 0; r < a; ++r) h.edges.emplace_back(l, r);
  }
  return h;
}

// Whether the path distance between x and y in adj is below limit.
bool within(const std::vector<std::vector<int>>& adj, int x, int y, int limit) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  dist[x] = 0;
  q.push(x);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    if (u == y) return true;
    if (dist[u] + 1 >= limit) continue;
    for (int w : adj[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return false;
}

HostBipartite greedy_search(int a, int k, std::uint64_t seed) {
  std::vector<std::pair<int, int>> pairs;
  for (int l = 0; l < a; ++l) {
    for (int r = 0; r < a; ++r) pairs.emplace_back(l, r);
  }
  HostBipartite best;
  const int tries = 64;
  for (int t = 0; t < tries; ++t) {
    Rng rng = node_rng(seed, t, phase_tag("lb/host"));
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::vector<std::vector<int>> adj(2 * a);
    HostBipartite h;
    h.a = a;
    h.k = k;
    h.kind = HostKind::kSearch;
    for (auto [l, r] : pairs) {
      // A new edge closes a cycle of length d(l, r) + 1.
      if (within(adj, l, a + r, 2 * k - 1)) continue;
      adj[l].push_back(a + r);
      adj[a + r].push_back(l);
      h.edges.emplace_back(l, r);
    }
    if (h.edges.size() > best.edges.size()) best = std::move(h);
  }
  std::sort(best.edges.begin(), best.edges.end());
  return best;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw LowerBoundError(what);
}

std::string bits_to_string(const std::vector<char>& bits) {
  std::string s;
  for (char b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<char> bits_from_string(const std::string& s) {
  std::vector<char> bits;
  for (char c : s) {
    if (c == '0' || c == '1') {
      bits.push_back(c == '1');
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw LowerBoundError("bit strings may only hold 0 and 1");
    }
  }
  return bits;
}

// Exact value (intersecting inputs) or lower bound (disjoint inputs).
Distance expected_girth(const LowerBoundInstance& inst) {
  const std::int64_t q = inst.q;
  if (inst.mode == LowerBoundMode::kDirected) {
    return Distance(inst.intersecting() ? 2 * q : 2 * inst.host.k * q);
  }
  if (inst.intersecting()) return Distance(2 * (q - 1) + 2 * inst.input_weight);
  return Distance(std::min(2 * inst.host.k, 6) * inst.input_weight);
}

}  // namespace

std::string to_string(HostKind kind) {
  switch (kind) {
    case HostKind::kComplete: return "complete";
    case HostKind::kProjectivePlane: return "projective-plane";
    case HostKind::kQuadrangle: return "quadrangle";
    case HostKind::kSearch: return "search";
  }
  return "search";
}

Graph HostBipartite::graph() const {
  Graph g(2 * a, false, false);
  for (auto [l, r] : edges) g.add_edge(l, a + r);
  return g;
}

HostBipartite host_bipartite(int a, int k, std::uint64_t seed) {
  if (a < 1 || k < 2) throw UnsupportedParameters("host needs a >= 1 and k >= 2");
  HostBipartite h;
  bool built = false;
  if (k == 2) {
    h = complete_bipartite(a, k);
    built = true;
  }
  for (int p = 2; !built && p * p <= a; ++p) {
    if (!is_prime(p)) continue;
    if (k == 3 && p * p + p + 1 == a) {
      h = projective_plane(p);
      built = true;
    } else if (k == 4 && (p + 1) * (p * p + 1) == a) {
      h = symplectic_quadrangle(p);
      built = true;
    }
  }
  if (!built) {
    if (a > 60) {
      throw UnsupportedParameters("no construction for a = " + std::to_string(a) +
                                  ", k = " + std::to_string(k));
    }
    h = greedy_search(a, k, seed);
  }
  if (a >= 2) {
    const Distance girth = exact_girth(h.graph()).value;
    if (girth < Distance(2 * k)) throw std::logic_error("host has a cycle shorter than 2k");
  }
  return h;
}

std::string to_string(LowerBoundMode mode) {
  return mode == LowerBoundMode::kDirected ? "directed" : "weighted";
}

LowerBoundMode parse_lower_bound_mode(const std::string& text) {
  if (text == "directed") return LowerBoundMode::kDirected;
  if (text == "weighted") return LowerBoundMode::kWeighted;
  throw LowerBoundError("unknown mode '" + text + "' (directed or weighted)");
}

NodeId LowerBoundInstance::left(int l, std::int64_t layer) const {
  return static_cast<NodeId>((layer - 1) * 2 * host.a + l);
}

NodeId LowerBoundInstance::right(int r, std::int64_t layer) const {
  return static_cast<NodeId>((layer - 1) * 2 * host.a + host.a + r);
}

NodeId LowerBoundInstance::tree_node(std::int64_t j) const {
  return static_cast<NodeId>(2 * host.a * q + j);
}

NodeId LowerBoundInstance::leaf(std::int64_t layer) const { return tree_node(q - 2 + layer); }

bool LowerBoundInstance::intersecting() const {
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i] && eb[i]) return true;
  }
  return false;
}

LowerBoundInstance build_instance(const HostBipartite& host, std::int64_t q, const std::vector<char>& ea,
                                  const std::vector<char>& eb, LowerBoundMode mode, double eps) {
  require(ea.size() == host.m() && eb.size() == host.m(),
          "input vectors need " + std::to_string(host.m()) + " bits");
  require(q >= 1, "q must be at least 1");
  LowerBoundInstance inst;
  inst.host = host;
  inst.q = q;
  inst.ea = ea;
  inst.eb = eb;
  inst.mode = mode;
  inst.eps = eps;
  const bool weighted = mode == LowerBoundMode::kWeighted;
  if (weighted) {
    require(q >= 2, "weighted instances need q >= 2");
    require(eps > 0, "eps must be positive");
    const double ratio = static_cast<double>(q) / eps;
    const double rounded = std::round(ratio);
    require(rounded >= 1 && std::abs(ratio - rounded) < 1e-9, "q / eps must be a positive integer");
    inst.input_weight = static_cast<Weight>(rounded);
    inst.tree_weight = 6 * inst.input_weight;
  }

  const std::int64_t n = 2 * host.a * q + inst.tree_size();
  Graph g(static_cast<NodeId>(n), !weighted, weighted);
  const Weight pipe_w = 1;
  for (std::int64_t i = 1; i < q; ++i) {
    for (int x = 0; x < host.a; ++x) {
      g.add_edge(inst.right(x, i), inst.right(x, i + 1), pipe_w);
      g.add_edge(inst.left(x, i + 1), inst.left(x, i), pipe_w);
    }
  }
  for (std::size_t e = 0; e < host.m(); ++e) {
    const auto [l, r] = host.edges[e];
    if (ea[e]) g.add_edge(inst.left(l, 1), inst.right(r, 1), inst.input_weight);
    if (eb[e]) g.add_edge(inst.right(r, q), inst.left(l, q), inst.input_weight);
  }
  for (std::int64_t j = 0; j < inst.tree_size(); ++j) {
    for (std::int64_t c : {2 * j + 1, 2 * j + 2}) {
      if (c < inst.tree_size()) g.add_edge(inst.tree_node(j), inst.tree_node(c), inst.tree_weight);
    }
  }
  for (std::int64_t i = 1; i <= q; ++i) {
    for (int x = 0; x < host.a; ++x) {
      g.add_edge(inst.left(x, i), inst.leaf(i), inst.tree_weight);
      g.add_edge(inst.right(x, i), inst.leaf(i), inst.tree_weight);
    }
  }
  inst.graph = std::move(g);

  int height = 0;
  while ((std::int64_t{2} << height) - 1 < inst.tree_size()) ++height;
  inst.hop_bound = 2 * (1 + height);
  if (inst.hop_bound > 4 * ceil_log2(n) + 4) throw std::logic_error("shortcut tree too tall");
  return inst;
}

std::pair<std::vector<char>, std::vector<char>> lower_bound_inputs(const std::string& pattern,
                                                                   const HostBipartite& host) {
  const std::size_t m = host.m();
  std::vector<char> ea(m, 0), eb(m, 0);
  if (pattern == "empty") return {ea, eb};
  if (pattern == "shared-single") {
    require(m >= 1, "host has no edges");
    ea[0] = eb[0] = 1;
    return {ea, eb};
  }
  if (pattern == "disjoint-full") {
    std::vector<char> set(m, 0);
    if (host.a >= 2) {
      if (const auto w = exact_girth(host.graph()).witness) {
        // Along the cycle, L -> R steps go to Alice and R -> L steps to Bob.
        const auto& vs = w->vertices;
        for (std::size_t i = 0; i < vs.size(); ++i) {
          const NodeId u = vs[i], v = vs[(i + 1) % vs.size()];
          const bool forward = u < host.a;
          const std::pair<int, int> e = forward ? std::pair{u, v - host.a} : std::pair{v, u - host.a};
          const auto idx = static_cast<std::size_t>(
              std::lower_bound(host.edges.begin(), host.edges.end(), e) - host.edges.begin());
          (forward ? ea : eb)[idx] = 1;
          set[idx] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (!set[i]) (i % 2 == 0 ? ea : eb)[i] = 1;
    }
    return {ea, eb};
  }
  if (pattern.rfind("random:", 0) == 0) {
    const std::uint64_t seed = std::stoull(pattern.substr(7));
    for (std::size_t i = 0; i < m; ++i) {
      ea[i] = node_coin(seed, static_cast<std::int64_t>(i), phase_tag("lb/alice"), 0.5);
      eb[i] = node_coin(seed, static_cast<std::int64_t>(i), phase_tag("lb/bob"), 0.5);
    }
    return {ea, eb};
  }
  std::ifstream in(pattern);
  require(static_cast<bool>(in), "unknown input pattern or unreadable file '" + pattern + "'");
  std::string a, b;
  std::getline(in, a);
  std::getline(in, b);
  ea = bits_from_string(a);
  eb = bits_from_string(b);
  require(ea.size() == m && eb.size() == m, "input file needs two lines of " + std::to_string(m) + " bits");
  return {ea, eb};
}

GapReport verify_gap(const LowerBoundInstance& inst) {
  const Graph& g = inst.graph;
  require(g.n() <= 5000, "instance too large for the oracle");
  GapReport rep;
  rep.intersecting = inst.intersecting();
  const GirthEstimate exact = exact_girth(g);
  rep.girth = exact.value;
  rep.witness = exact.witness;
  rep.expected = expected_girth(inst);
  if (inst.mode == LowerBoundMode::kWeighted) {
    rep.paper_weighted = 2.0 * static_cast<double>(inst.q) / inst.eps * (1.0 + inst.eps);
    rep.pipe_weighted = 2 * (inst.q - 1) + 2 * inst.input_weight;
  }
  rep.hop_diameter = hop_diameter(g);
  rep.hop_limit = 4 * ceil_log2(g.n()) + 4;

  auto fail = [&](const std::string& what) { throw GapViolation(what, rep.witness); };
  if (rep.intersecting && rep.girth != rep.expected) {
    fail("girth " + rep.girth.to_string() + " differs from " + rep.expected.to_string());
  }
  if (!rep.intersecting && rep.girth < rep.expected) {
    fail("girth " + rep.girth.to_string() + " below " + rep.expected.to_string());
  }
  if (rep.hop_diameter > Distance(rep.hop_limit)) {
    fail("hop diameter " + rep.hop_diameter.to_string() + " above " + std::to_string(rep.hop_limit));
  }
  if (inst.mode == LowerBoundMode::kDirected) {
    for (std::int64_t j = 0; j < inst.tree_size(); ++j) {
      if (shortest_cycle_through(g, inst.tree_node(j)).is_finite()) {
        fail("tree node " + std::to_string(j) + " lies on a directed cycle");
      }
    }
  }
  return rep;
}

std::pair<int, std::int64_t> suggest_lower_bound_parameters(std::int64_t n, int k) {
  require(n >= 2 && k >= 2, "need n >= 2 and k >= 2");
  const double exponent = static_cast<double>(k - 1) / static_cast<double>(2 * k - 1);
  const int a = std::max(1, static_cast<int>(std::lround(std::pow(static_cast<double>(n), exponent))));
  const std::int64_t q = std::max<std::int64_t>(1, n / (2 * a));
  return {a, q};
}

void write_instance(const std::string& path, const LowerBoundInstance& inst) {
  write_graph_file(path, inst.graph);
  nlohmann::json host = {{"a", inst.host.a}, {"k", inst.host.k}, {"kind", to_string(inst.host.kind)}};
  host["edges"] = nlohmann::json::array();
  for (auto [l, r] : inst.host.edges) host["edges"].push_back({l, r});
  const Distance expected = expected_girth(inst);
  nlohmann::json meta = {
      {"version", 1},
      {"host", host},
      {"q", inst.q},
      {"mode", to_string(inst.mode)},
      {"eps", inst.eps},
      {"ea", bits_to_string(inst.ea)},
      {"eb", bits_to_string(inst.eb)},
      {"n", inst.graph.n()},
      {"m", inst.graph.m()},
      {"intersecting", inst.intersecting()},
      {"expected_girth", expected.is_finite() ? nlohmann::json(expected.value()) : nlohmann::json()},
      {"expected_kind", inst.intersecting() ? "exact" : "at_least"},
  };
  if (inst.mode == LowerBoundMode::kWeighted) {
    meta["paper_weighted"] = 2.0 * static_cast<double>(inst.q) / inst.eps * (1.0 + inst.eps);
    meta["pipe_weighted"] = 2 * (inst.q - 1) + 2 * inst.input_weight;
  }
  std::ofstream out(path + ".json");
  if (!out) throw LowerBoundError("cannot write " + path + ".json");
  out << meta.dump(2) << "\n";
}

LowerBoundInstance read_instance(const std::string& path) {
  std::ifstream in(path + ".json");
  require(static_cast<bool>(in), "missing metadata " + path + ".json");
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw LowerBoundError(std::string("bad metadata: ") + e.what());
  }
  HostBipartite host;
  host.a = meta.at("host").at("a").get<int>();
  host.k = meta.at("host").at("k").get<int>();
  const std::string kind = meta.at("host").at("kind").get<std::string>();
  for (HostKind hk : {HostKind::kComplete, HostKind::kProjectivePlane, HostKind::kQuadrangle, HostKind::kSearch}) {
    if (to_string(hk) == kind) host.kind = hk;
  }
  for (const auto& e : meta.at("host").at("edges")) host.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  LowerBoundInstance inst =
      build_instance(host, meta.at("q").get<std::int64_t>(), bits_from_string(meta.at("ea").get<std::string>()),
                     bits_from_string(meta.at("eb").get<std::string>()),
                     parse_lower_bound_mode(meta.at("mode").get<std::string>()), meta.at("eps").get<double>());
  const Graph file = read_graph_file(path);
  const auto a = file.edges();
  const auto b = inst.graph.edges();
  const bool same = file.n() == inst.graph.n() && file.directed() == inst.graph.directed() &&
                    a.size() == b.size() &&
                    std::equal(a.begin(), a.end(), b.begin(), [](const Edge& x, const Edge& y) {
                      return x.u == y.u && x.v == y.v && x.w == y.w;
                    });
  require(same, "graph file does not match its metadata");
  return inst;
}

}  // namespace cgirth
