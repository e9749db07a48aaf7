#pragma once

#include <cstdint>
#include <random>

namespace dzn {

/// Deterministic RNG for replayable searches.  mt19937_64 output is fixed by
/// the standard; bounding via plain modulo keeps the stream independent of
/// library-specific distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : eng_() % bound; }
  bool coin() { return (eng_() & 1) != 0; }

private:
  std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Sub-seed for instance `index` of a search with master seed `seed`;
/// instances draw independently so the stream order never matters.
inline std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

}  // namespace dzn
