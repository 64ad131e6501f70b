#pragma once

#include <cstdint>
#include <random>

#include "slopkit/common.hpp"

namespace slopkit::rng {

using Engine = std::mt19937_64;

inline Engine make_engine(RngSeed seed) { return Engine{seed}; }

/// splitmix64 finalizer, used to decorrelate derived stream seeds.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent seed for sub-stream `stream` of a master seed.
constexpr RngSeed derive(RngSeed seed, std::uint64_t stream) noexcept {
  return mix(seed ^ mix(stream));
}

constexpr RngSeed derive(RngSeed seed, std::uint64_t a, std::uint64_t b) noexcept {
  return derive(derive(seed, a), b);
}

}  // namespace slopkit::rng
