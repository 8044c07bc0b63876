#ifndef CGIRTH_REPORT_HPP_
#define CGIRTH_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgirth/graph.hpp"

namespace cgirth {

struct PhaseRounds {
  std::string name;
  std::int64_t rounds = 0;
};

struct RoundReport {
  std::int64_t rounds = 0;
  std::int64_t messages = 0;
  std::int64_t bits = 0;
  std::int64_t max_bits = 0;  // most bits submitted on one channel in one round
  std::vector<PhaseRounds> phases;

  // Sequential composition: rounds add up, max_bits takes the max. Phases with
  // the same name are merged.
  void append(const RoundReport& other);
  void add_phase(const std::string& name, std::int64_t rounds);
  std::int64_t phase_rounds(const std::string& name) const;
};

struct GirthEstimate {
  Distance value;
  std::optional<CycleWitness> witness;
  RoundReport report;
};

}  // namespace cgirth

#endif  // CGIRTH_REPORT_HPP_
