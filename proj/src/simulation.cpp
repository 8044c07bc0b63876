#include "cgirth/simulation.hpp"

#include "cgirth/tree_ops.hpp"

namespace cgirth {

Simulation::Simulation(const Graph& g, const EngineConfig& cfg, std::uint64_t seed)
    : g_(g), cfg_(cfg), seed_(seed), net_(g) {
  RoundReport r;
  tree_ = build_bfs_tree(net_, cfg_, r);
  charge(r);
}

void Simulation::charge_sync() {
  if (tree_.height > 0) {
    report_.rounds += 2 * tree_.height;
    report_.add_phase("sync", 2 * tree_.height);
  }
}

}  // namespace cgirth
