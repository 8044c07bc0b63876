#ifndef CGIRTH_GRAPH_HPP_
#define CGIRTH_GRAPH_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace cgirth {

using NodeId = std::int32_t;
using Weight = std::int64_t;

inline constexpr NodeId kNoNode = -1;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A nonnegative path length or infinity. Infinity is a dedicated state, not a
// large finite value: arithmetic saturates and value() is only defined for
// finite distances.
class Distance {
 public:
  constexpr Distance() = default;  // infinity
  constexpr explicit Distance(std::int64_t value) : raw_(value) {}

  static constexpr Distance infinity() { return Distance(); }
  static constexpr Distance zero() { return Distance(0); }

  constexpr bool is_finite() const { return raw_ != kInf; }
  constexpr bool is_infinite() const { return raw_ == kInf; }

  std::int64_t value() const {
    if (!is_finite()) throw std::logic_error("value() of infinite Distance");
    return raw_;
  }

  constexpr friend Distance operator+(Distance a, Distance b) {
    if (!a.is_finite() || !b.is_finite()) return Distance();
    return Distance(a.raw_ + b.raw_);
  }
  constexpr friend Distance operator+(Distance a, std::int64_t w) {
    if (!a.is_finite()) return Distance();
    return Distance(a.raw_ + w);
  }
  constexpr Distance& operator+=(Distance other) { return *this = *this + other; }

  constexpr friend auto operator<=>(Distance, Distance) = default;
  constexpr friend bool operator==(Distance, Distance) = default;

  // For hashing / dense storage only.
  constexpr std::int64_t raw() const { return raw_; }

  std::string to_string() const;

 private:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::int64_t raw_ = kInf;
};

std::ostream& operator<<(std::ostream& os, Distance d);

inline Distance min(Distance a, Distance b) { return b < a ? b : a; }

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Weight w = 1;
};

// One endpoint's view of an edge. For undirected graphs every edge appears in
// both endpoints' out() and in() lists.
struct Arc {
  NodeId to = 0;
  Weight w = 1;
  std::int32_t edge = 0;
};

// Simple graph on nodes 0..n-1, optionally directed and/or weighted. Weights
// are positive integers; unweighted graphs carry weight 1 on every edge.
class Graph {
 public:
  Graph() = default;
  Graph(NodeId n, bool directed, bool weighted);

  NodeId n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  bool directed() const { return directed_; }
  bool weighted() const { return weighted_; }
  Weight max_weight() const { return max_weight_; }

  // Throws GraphError on self-loops, duplicates, out-of-range endpoints,
  // nonpositive weights, or a non-unit weight on an unweighted graph.
  void add_edge(NodeId u, NodeId v, Weight w = 1);

  bool has_edge(NodeId u, NodeId v) const;
  std::optional<Weight> weight(NodeId u, NodeId v) const;

  std::span<const Edge> edges() const { return edges_; }
  std::span<const Arc> out(NodeId v) const { return out_[v]; }
  std::span<const Arc> in(NodeId v) const { return directed_ ? in_[v] : out_[v]; }

  // Neighbors in the underlying undirected graph, each listed once.
  std::vector<NodeId> underlying_neighbors(NodeId v) const;

  // Same node set and direction, every weight replaced by f(w).
  template <class F>
  Graph map_weights(F&& f, bool weighted = true) const {
    Graph g(n_, directed_, weighted);
    for (const Edge& e : edges_) g.add_edge(e.u, e.v, f(e.w));
    return g;
  }

 private:
  std::uint64_t key(NodeId u, NodeId v) const;

  NodeId n_ = 0;
  bool directed_ = false;
  bool weighted_ = false;
  Weight max_weight_ = 1;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::unordered_set<std::uint64_t> keys_;
};

// True iff every weight is at most c * n^kappa.
bool weights_polynomially_bounded(const Graph& g, double c, double kappa);

// Closed walk v0 -> v1 -> ... -> v_{k-1} -> v0 (the first vertex is not
// repeated at the end).
struct CycleWitness {
  std::vector<NodeId> vertices;
  Weight weight = 0;
  std::int64_t hops = 0;
};

// Checks that consecutive vertices are joined by edges (respecting direction),
// that no vertex repeats, that there are at least 3 vertices for undirected
// graphs (2 for directed), and that weight/hops match.
bool verify_cycle(const Graph& g, const CycleWitness& c);

// Text format: header "n m directed weighted", then m lines "u v" or "u v w".
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace cgirth

#endif  // CGIRTH_GRAPH_HPP_
