#pragma once

#include <cstdint>

#include "maximin/model.hpp"

namespace maximin {

// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

// Per-replication seed: a chained mix64 over the four coordinates, so each
// (instance, algorithm, replication) cell is reproducible on its own.
//
//   h = mix64(master ^ 0x6a09e667f3bcc908)
//   h = mix64(h ^ mix64(instance_id + 0x9e3779b97f4a7c15))
//   h = mix64(h ^ mix64(algorithm_id + 0xbb67ae8584caa73b))
//   h = mix64(h ^ mix64(replication + 0x3c6ef372fe94f82b))
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t instance_id, std::uint64_t algorithm_id,
                          std::uint64_t replication);

// Counter-based Bernoulli source. Draw n returns mix64(seed + n * golden),
// so the stream depends only on the seed and the number of prior draws.
class SamplingEnv {
 public:
  explicit SamplingEnv(std::uint64_t seed) : seed_(seed), state_(seed) {}

  // Throws std::out_of_range for an arm outside the instance.
  int sample(const GameInstance& instance, ArmId arm);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t total_samples() const { return total_; }

  std::uint64_t next_u64();
  // Uniform in [0,1) with 53 random bits.
  double next_unit();

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
  std::uint64_t total_ = 0;
};

}  // namespace maximin
