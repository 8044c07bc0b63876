#ifndef CGIRTH_GENERATORS_HPP_
#define CGIRTH_GENERATORS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgirth/graph.hpp"

namespace cgirth {

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "kind:key=value,key=value". Kinds:
//   uniform   n, p, [directed, W]
//   planted   n, len, [deg, directed, W, cw]  planted cycle of len edges
//   chords    n, chords, [W]                  C_n plus random chords
//   grid      rows, cols, [W]
//   regular   n, d, [directed, W]             union of d/2 random Hamiltonian cycles
// W > 1 makes the graph weighted with weights uniform in [1, W]; for planted,
// cw bounds the planted cycle's edge weights (default W).
struct GenSpec {
  std::string kind;
  std::map<std::string, std::string> params;

  double get(const std::string& key, double fallback) const;
  double require(const std::string& key) const;
  std::string to_string() const;
};

GenSpec parse_gen_spec(const std::string& text);

struct Generated {
  Graph graph;
  std::optional<Weight> planted_weight;
  std::vector<NodeId> planted_cycle;
};

Generated generate(const GenSpec& spec, std::uint64_t seed);

// Every edge of weight w becomes a path of w unit edges through fresh nodes
// (appended after the original ones); directed edges become directed paths.
Graph subdivide(const Graph& g);

}  // namespace cgirth

#endif  // CGIRTH_GENERATORS_HPP_
