#include "nbwalk/random.hpp"

#include <limits>

namespace nbwalk {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_replica_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

std::size_t RandomStream::uniform_index(std::size_t n) {
  if (n <= 1) return 0;
  const std::uint64_t range = n;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % range + 1) % range;  // accept draws <= limit
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw > limit);
  return static_cast<std::size_t>(draw % range);
}

double RandomStream::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

}  // namespace nbwalk
