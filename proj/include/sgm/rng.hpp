#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sgm {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable hash of an ordered tuple of integers; used to name substreams so a
// trial's randomness depends only on its coordinates, never on scheduling.
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t part : parts) h = mix64(h ^ mix64(part));
  return h;
}

inline Rng make_stream(std::uint64_t seed) { return Rng(seed); }

}  // namespace sgm
