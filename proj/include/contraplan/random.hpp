#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace contraplan {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a base seed and a path of tags,
/// so a sample's randomness depends only on its coordinates, never on the
/// thread that evaluates it.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = mix64(base);
  for (std::uint64_t t : tags) h = mix64(h ^ mix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_rng(std::uint64_t base, std::initializer_list<std::uint64_t> tags = {}) {
  return Rng(derive_seed(base, tags));
}

// Stream tags used across modules.
namespace stream {
inline constexpr std::uint64_t kPerturbation = 1;
inline constexpr std::uint64_t kMetrics = 2;
inline constexpr std::uint64_t kHarness = 3;
inline constexpr std::uint64_t kObservation = 4;
inline constexpr std::uint64_t kPlanner = 5;
inline constexpr std::uint64_t kScene = 6;
inline constexpr std::uint64_t kMpc = 7;
inline constexpr std::uint64_t kInitialGuess = 8;
}  // namespace stream

}  // namespace contraplan
