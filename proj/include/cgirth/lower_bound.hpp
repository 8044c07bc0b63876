#ifndef CGIRTH_LOWER_BOUND_HPP_
#define CGIRTH_LOWER_BOUND_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cgirth/graph.hpp"

namespace cgirth {

class LowerBoundError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedParameters : public LowerBoundError {
 public:
  using LowerBoundError::LowerBoundError;
};

class GapViolation : public std::runtime_error {
 public:
  GapViolation(const std::string& what, std::optional<CycleWitness> witness)
      : std::runtime_error(what), witness(std::move(witness)) {}
  std::optional<CycleWitness> witness;
};

enum class HostKind { kComplete, kProjectivePlane, kQuadrangle, kSearch };

std::string to_string(HostKind kind);

// Bipartite host with sides L = {0..a-1} and R = {0..a-1}; edges are
// (L index, R index) pairs in lexicographic order.
struct HostBipartite {
  int a = 0;
  int k = 0;
  HostKind kind = HostKind::kSearch;
  std::vector<std::pair<int, int>> edges;

  std::size_t m() const { return edges.size(); }
  // Undirected graph with L at 0..a-1 and R at a..2a-1.
  Graph graph() const;
};

// A bipartite graph on a + a vertices with no cycle shorter than 2k. Uses the
// projective plane of order p when k = 3 and a = p^2 + p + 1, the symplectic
// quadrangle W(p) when k = 4 and a = (p + 1)(p^2 + 1), and otherwise the best
// of several randomized greedy maximal graphs (a <= 60). The result is
// certified with the exact girth oracle.
HostBipartite host_bipartite(int a, int k, std::uint64_t seed = 1);

enum class LowerBoundMode { kDirected, kWeighted };

std::string to_string(LowerBoundMode mode);
LowerBoundMode parse_lower_bound_mode(const std::string& text);

struct LowerBoundInstance {
  HostBipartite host;
  std::int64_t q = 1;
  std::vector<char> ea;
  std::vector<char> eb;
  LowerBoundMode mode = LowerBoundMode::kDirected;
  double eps = 1.0;
  Weight input_weight = 1;  // q / eps in weighted mode
  Weight tree_weight = 1;   // 6q / eps in weighted mode
  std::int64_t hop_bound = 0;  // structural bound on the hop diameter
  Graph graph;

  NodeId left(int l, std::int64_t layer) const;   // l_layer, layers 1..q
  NodeId right(int r, std::int64_t layer) const;  // r_layer
  NodeId tree_node(std::int64_t j) const;         // heap order, root j = 0
  NodeId leaf(std::int64_t layer) const;
  std::int64_t tree_size() const { return 2 * q - 1; }
  bool intersecting() const;
};

// Layers of pipes (q - 1 edges each), input edges in layer 1 (Alice) and
// layer q (Bob), and a one-way shortcut tree with q leaves.
LowerBoundInstance build_instance(const HostBipartite& host, std::int64_t q, const std::vector<char>& ea,
                                  const std::vector<char>& eb, LowerBoundMode mode, double eps = 1.0);

// "shared-single", "disjoint-full", "empty", "random:<seed>", or a path to a
// file holding the two bit strings on separate lines. disjoint-full splits
// E(H) so that the edges of a shortest host cycle alternate between the two
// sides, which makes the disjoint girth exactly 2kq for hosts of girth 2k.
std::pair<std::vector<char>, std::vector<char>> lower_bound_inputs(const std::string& pattern,
                                                                   const HostBipartite& host);

struct GapReport {
  bool intersecting = false;
  Distance girth;
  std::optional<CycleWitness> witness;
  Distance expected;       // exact value when intersecting, lower bound otherwise
  double paper_weighted = 0;   // (2q/eps)(1 + eps)
  std::int64_t pipe_weighted = 0;  // 2(q - 1) + 2q/eps
  Distance hop_diameter;
  std::int64_t hop_limit = 0;  // 4 ceil(log2 n) + 4
};

// Exact girth and hop diameter checked against the gap the construction
// promises; throws GapViolation otherwise.
GapReport verify_gap(const LowerBoundInstance& inst);

// Suggested host side a and pipe parameter q for about n vertices.
std::pair<int, std::int64_t> suggest_lower_bound_parameters(std::int64_t n, int k);

// Graph in the text format at path, metadata as JSON at path + ".json".
void write_instance(const std::string& path, const LowerBoundInstance& inst);
// Rebuilds the instance from the metadata and checks it against the graph file.
LowerBoundInstance read_instance(const std::string& path);

}  // namespace cgirth

#endif  // CGIRTH_LOWER_BOUND_HPP_
