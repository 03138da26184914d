#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <iterator>

namespace cg2a {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mixSeed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream `index` within family `stream` of a run seeded with `seed`.
constexpr std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t index = 0) noexcept {
  return mixSeed(mixSeed(mixSeed(seed) ^ stream) ^ index);
}

inline std::size_t uniformIndex(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline std::uint32_t uniformCount(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

inline bool coinFlip(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class Range>
decltype(auto) pickUniform(Rng& rng, const Range& values) {
  return values[uniformIndex(rng, std::size(values))];
}

}  // namespace cg2a
