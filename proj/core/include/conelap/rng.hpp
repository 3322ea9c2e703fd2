#pragma once

#include <cstdint>
#include <random>

namespace conelap {

/// Seeded 64-bit Mersenne Twister (std::mt19937_64) with portable conversions
/// to uniform and normal variates, so draws are identical on every platform.
///
/// - uniform(): top 53 bits of one engine output, scaled to [0, 1).
/// - normal(): Box-Muller on two uniform() draws; returns the cosine branch
///   only, so every normal consumes exactly two engine outputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for an independent sub-stream: mix64(base ^ mix64(stream + 1)).
/// Trials, regeneration attempts and similar fan-outs all use this rule.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace conelap
