#pragma once

#include <cstdint>
#include <random>

namespace qgossip {

/// The single random source of a trial.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// derives every variate from raw 64-bit words so that a seed reproduces the
/// same edge sequence and quantizer draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Bernoulli(1/2).
  bool coin() { return uniform() < 0.5; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of trial `index` in a batch started from `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + index);
}

/// Seed used to build a random topology (geometric graphs) for a run.
constexpr std::uint64_t graph_seed(std::uint64_t master) {
  return mix64(master ^ 0x6772617068ULL);
}

}  // namespace qgossip
