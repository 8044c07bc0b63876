#ifndef CGIRTH_RANDOM_HPP_
#define CGIRTH_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace cgirth {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t phase_tag(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t node, std::uint64_t tag) {
  return splitmix64(splitmix64(splitmix64(root) ^ node) ^ tag);
}

// Independent stream for one node in one phase.
inline Rng node_rng(std::uint64_t root, std::int64_t node, std::uint64_t tag) {
  return Rng(derive_seed(root, static_cast<std::uint64_t>(node), tag));
}

// Bernoulli draw from a dedicated stream; used for sampling decisions so that
// they do not depend on how much randomness earlier phases consumed.
inline bool node_coin(std::uint64_t root, std::int64_t node, std::uint64_t tag, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  const std::uint64_t x = derive_seed(root, static_cast<std::uint64_t>(node), tag);
  return static_cast<double>(x >> 11) * 0x1.0p-53 < p;
}

}  // namespace cgirth

#endif  // CGIRTH_RANDOM_HPP_
