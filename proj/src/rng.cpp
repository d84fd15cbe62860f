#include "prioq/rng.hpp"

#include <stdexcept>

namespace prioq {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t Rng::geometric(double success) {
  if (!(success > 0.0 && success <= 1.0))
    throw std::invalid_argument("geometric: success probability must be in (0,1]");
  if (success == 1.0) return 1;
  std::geometric_distribution<std::uint64_t> failures(success);
  return failures(engine_) + 1;
}

std::size_t Rng::index(std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  return pick(engine_);
}

}  // namespace prioq
