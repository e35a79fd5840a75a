#pragma once

#include <cstdint>
#include <random>

namespace ognav {

using Rng = std::mt19937_64;

/// splitmix64 step; used to derive well-separated seeds from a base seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic sub-seed for (base, a, b, c) tuples, e.g. one per episode.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = base;
  std::uint64_t z = splitmix64(s);
  s ^= z + a * 0x9e3779b97f4a7c15ULL;
  z = splitmix64(s);
  s ^= z + b * 0xc2b2ae3d27d4eb4fULL;
  z = splitmix64(s);
  s ^= z + c * 0x165667b19e3779f9ULL;
  return splitmix64(s);
}

}  // namespace ognav
