#ifndef CGIRTH_SIMULATION_HPP_
#define CGIRTH_SIMULATION_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cgirth/engine.hpp"
#include "cgirth/graph.hpp"
#include "cgirth/random.hpp"
#include "cgirth/report.hpp"

namespace cgirth {

// BFS spanning forest of the communication graph: one tree per connected
// component, rooted at the component's minimum ID.
struct BfsTree {
  std::vector<NodeId> root;
  std::vector<NodeId> parent;      // kNoNode at roots
  std::vector<int> parent_port;    // -1 at roots
  std::vector<std::vector<int>> child_ports;
  std::vector<int> depth;
  int height = 0;                  // max depth over all components
};

// One distributed execution: the network, its BFS tree, engine settings, the
// root seed and the accumulated round report. Algorithms built from several
// engine programs run them in sequence through run(); their rounds add up.
class Simulation {
 public:
  Simulation(const Graph& g, const EngineConfig& cfg, std::uint64_t seed);

  const Network& net() const { return net_; }
  const Graph& graph() const { return net_.graph(); }
  NodeId n() const { return net_.n(); }
  const BfsTree& tree() const { return tree_; }
  const EngineConfig& config() const { return cfg_; }
  std::uint64_t seed() const { return seed_; }
  RoundReport& report() { return report_; }
  const RoundReport& report() const { return report_; }

  Rng rng(NodeId v, std::string_view phase) const {
    return node_rng(seed_, v, phase_tag(phase));
  }
  bool coin(NodeId v, std::string_view phase, double p) const {
    return node_coin(seed_, v, phase_tag(phase), p);
  }

  // Runs a program on this network (or on a reweighted copy with the same
  // topology). Programs end by quiescence; the O(D) echo that would detect
  // it is charged as 2 * height extra rounds under "sync".
  template <class P>
  RoundReport run(P& prog, const std::string& phase, const Network* on = nullptr) {
    RoundReport r = run_program(on ? *on : net_, prog, cfg_, phase);
    charge(r);
    return r;
  }

  void charge(const RoundReport& r) {
    report_.append(r);
    charge_sync();
  }
  void charge_sync();

 private:
  const Graph& g_;
  EngineConfig cfg_;
  std::uint64_t seed_;
  Network net_;
  BfsTree tree_;
  RoundReport report_;
};

// A graph kept alive together with its network, for reweighted copies of the
// base topology (scaled weights).
struct OwnedNetwork {
  explicit OwnedNetwork(Graph g) : graph(std::make_unique<Graph>(std::move(g))), net(*graph) {}
  std::unique_ptr<Graph> graph;
  Network net;
};

}  // namespace cgirth

#endif  // CGIRTH_SIMULATION_HPP_
