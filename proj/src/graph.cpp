#include "cgirth/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cgirth {

std::string Distance::to_string() const {
  return is_finite() ? std::to_string(raw_) : std::string("inf");
}

std::ostream& operator<<(std::ostream& os, Distance d) { return os << d.to_string(); }

Graph::Graph(NodeId n, bool directed, bool weighted)
    : n_(n), directed_(directed), weighted_(weighted) {
  if (n < 0) throw GraphError("negative node count");
  out_.resize(n);
  if (directed_) in_.resize(n);
}

std::uint64_t Graph::key(NodeId u, NodeId v) const {
  if (!directed_ && u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

void Graph::add_edge(NodeId u, NodeId v, Weight w) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw GraphError("edge endpoint out of range: " + std::to_string(u) + " " +
                     std::to_string(v));
  }
  if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
  if (w < 1) throw GraphError("nonpositive weight " + std::to_string(w));
  if (!weighted_ && w != 1) throw GraphError("non-unit weight in unweighted graph");
  if (!keys_.insert(key(u, v)).second) {
    throw GraphError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  }
  const auto id = static_cast<std::int32_t>(edges_.size());
  edges_.push_back({u, v, w});
  max_weight_ = std::max(max_weight_, w);
  out_[u].push_back({v, w, id});
  if (directed_) {
    in_[v].push_back({u, w, id});
  } else {
    out_[v].push_back({u, w, id});
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return keys_.count(key(u, v)) > 0;
}

std::optional<Weight> Graph::weight(NodeId u, NodeId v) const {
  if (!has_edge(u, v)) return std::nullopt;
  for (const Arc& a : out_[u]) {
    if (a.to == v) return a.w;
  }
  return std::nullopt;
}

std::vector<NodeId> Graph::underlying_neighbors(NodeId v) const {
  std::vector<NodeId> nb;
  nb.reserve(out_[v].size() + (directed_ ? in_[v].size() : 0));
  for (const Arc& a : out_[v]) nb.push_back(a.to);
  if (directed_) {
    for (const Arc& a : in_[v]) nb.push_back(a.to);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  } else {
    std::sort(nb.begin(), nb.end());
  }
  return nb;
}

bool weights_polynomially_bounded(const Graph& g, double c, double kappa) {
  const double bound = c * std::pow(static_cast<double>(std::max<NodeId>(g.n(), 1)), kappa);
  return static_cast<double>(g.max_weight()) <= bound;
}

bool verify_cycle(const Graph& g, const CycleWitness& c) {
  const auto& vs = c.vertices;
  const std::size_t len = vs.size();
  if (len < (g.directed() ? 2u : 3u)) return false;
  std::vector<char> seen(g.n(), 0);
  Weight total = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const NodeId a = vs[i];
    const NodeId b = vs[(i + 1) % len];
    if (a < 0 || a >= g.n() || seen[a]) return false;
    seen[a] = 1;
    auto w = g.weight(a, b);
    if (!w) return false;
    total += *w;
  }
  return total == c.weight && static_cast<std::int64_t>(len) == c.hops;
}

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw GraphError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line(line)) throw GraphError("empty graph file");
  long long n = 0, m = 0;
  int directed = 0, weighted = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m >> directed >> weighted) || (hs >> extra)) {
      parse_error(lineno, "expected header 'n m directed weighted'");
    }
    if (n < 0 || m < 0 || (directed != 0 && directed != 1) ||
        (weighted != 0 && weighted != 1)) {
      parse_error(lineno, "invalid header values");
    }
  }
  Graph g(static_cast<NodeId>(n), directed == 1, weighted == 1);
  for (long long i = 0; i < m; ++i) {
    if (!next_line(line)) parse_error(lineno + 1, "missing edge line");
    std::istringstream es(line);
    long long u = 0, v = 0, w = 1;
    if (!(es >> u >> v)) parse_error(lineno, "expected 'u v [w]'");
    if (!(es >> w)) {
      if (weighted) parse_error(lineno, "missing weight");
      w = 1;
    } else {
      std::string extra;
      if (es >> extra) parse_error(lineno, "trailing tokens");
    }
    try {
      g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), w);
    } catch (const GraphError& e) {
      parse_error(lineno, e.what());
    }
  }
  if (next_line(line)) parse_error(lineno, "more edges than declared");
  return g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GraphError("cannot open " + path);
  return read_graph(f);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << ' ' << (g.directed() ? 1 : 0) << ' '
      << (g.weighted() ? 1 : 0) << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (g.weighted()) out << ' ' << e.w;
    out << '\n';
  }
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream f(path);
  if (!f) throw GraphError("cannot write " + path);
  write_graph(f, g);
}

}  // namespace cgirth
