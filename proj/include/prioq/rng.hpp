#pragma once

#include <cstdint>
#include <random>

namespace prioq {

// Seed for substream `stream` of master seed `master`.
//
// Counter-based: seed = splitmix64(splitmix64(master) + (stream + 1) * golden),
// where golden = 0x9E3779B97F4A7C15. Replica i always gets the same engine
// regardless of how many replicas run or in what order they are scheduled.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream);

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  using engine_type = std::mt19937_64;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, std::uint64_t stream)
      : engine_(derive_stream_seed(master, stream)) {}

  // [0, 1)
  double uniform() { return unit_(engine_); }
  // (0, 1]
  double uniform_pos() { return 1.0 - unit_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double prob) { return uniform() < prob; }
  // Geometric on {1, 2, ...} with the given success probability.
  std::uint64_t geometric(double success);
  // Uniform index in [0, n).
  std::size_t index(std::size_t n);

  engine_type& engine() { return engine_; }

 private:
  engine_type engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace prioq
