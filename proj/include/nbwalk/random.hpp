#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace nbwalk {

// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed of replica `index` under `master`:
//   mix64(master + (index + 1) * 0x9E3779B97F4A7C15)
// This derivation is part of the reproducibility contract and must not change.
std::uint64_t derive_replica_seed(std::uint64_t master, std::uint64_t index) noexcept;

// Explicit source of randomness handed to every sampler.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on {0, ..., n-1}; n must be positive. Rejection sampling keeps
  // the draw sequence independent of the standard library implementation.
  std::size_t uniform_index(std::size_t n);

  // Uniform on [0, 1) with 53 random bits.
  double uniform01();

  std::uint64_t next_word() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nbwalk
