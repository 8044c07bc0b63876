#include "cgirth/report.hpp"

#include <algorithm>

namespace cgirth {

void RoundReport::append(const RoundReport& other) {
  rounds += other.rounds;
  messages += other.messages;
  bits += other.bits;
  max_bits = std::max(max_bits, other.max_bits);
  for (const auto& p : other.phases) add_phase(p.name, p.rounds);
}

void RoundReport::add_phase(const std::string& name, std::int64_t r) {
  for (auto& p : phases) {
    if (p.name == name) {
      p.rounds += r;
      return;
    }
  }
  phases.push_back({name, r});
}

std::int64_t RoundReport::phase_rounds(const std::string& name) const {
  for (const auto& p : phases) {
    if (p.name == name) return p.rounds;
  }
  return 0;
}

}  // namespace cgirth
