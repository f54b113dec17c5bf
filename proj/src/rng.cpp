#include "maximin/rng.hpp"

#include <stdexcept>

namespace maximin {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t instance_id, std::uint64_t algorithm_id,
                          std::uint64_t replication) {
  std::uint64_t h = mix64(master ^ 0x6a09e667f3bcc908ULL);
  h = mix64(h ^ mix64(instance_id + kGolden));
  h = mix64(h ^ mix64(algorithm_id + 0xbb67ae8584caa73bULL));
  h = mix64(h ^ mix64(replication + 0x3c6ef372fe94f82bULL));
  return h;
}

std::uint64_t SamplingEnv::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double SamplingEnv::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

int SamplingEnv::sample(const GameInstance& instance, ArmId arm) {
  if (!instance.layout().contains(arm)) {
    throw std::out_of_range("arm (" + std::to_string(arm.action) + "," + std::to_string(arm.response) +
                            ") is not part of the instance");
  }
  ++total_;
  return next_unit() < instance.mean(arm) ? 1 : 0;
}

}  // namespace maximin
