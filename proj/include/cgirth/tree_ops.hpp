#ifndef CGIRTH_TREE_OPS_HPP_
#define CGIRTH_TREE_OPS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cgirth/engine.hpp"
#include "cgirth/simulation.hpp"

namespace cgirth {

// Min-ID flooding with hop counts; every node adopts the smallest root it hears
// of and the neighbor offering the shortest hop distance to it.
BfsTree build_bfs_tree(const Network& net, const EngineConfig& cfg, RoundReport& report);

enum class AggregateOp { kMin, kSum, kAnd };

// Convergecast to the root followed by a broadcast back down: afterwards every
// node holds the aggregate over its component. Values travel as fields of the
// given kind.
std::vector<std::int64_t> tree_aggregate(Simulation& sim, const std::vector<std::int64_t>& values,
                                         AggregateOp op, FieldKind kind, const std::string& phase);

std::vector<Distance> tree_min(Simulation& sim, const std::vector<Distance>& values,
                               const std::string& phase);

// Sends each root's value down its tree; returns the value received per node.
std::vector<std::int64_t> tree_broadcast(Simulation& sim, const std::vector<std::int64_t>& root_value,
                                         FieldKind kind, const std::string& phase);

// A small record moved by all-gather; its wire cost is supplied by the caller.
struct Item {
  std::int64_t a = 0, b = 0, c = 0;
  friend bool operator==(const Item&, const Item&) = default;
};

// Pipelined upcast of every node's items to its root, then pipelined downcast
// of the combined list; as many items share a message as fit in B bits.
// Returns, for each root, the list every node of that component now knows
// (indexed by root ID; empty for non-roots).
std::vector<std::vector<Item>> tree_allgather(Simulation& sim,
                                              const std::vector<std::vector<Item>>& items,
                                              int item_bits, const std::string& phase);

}  // namespace cgirth

#endif  // CGIRTH_TREE_OPS_HPP_
