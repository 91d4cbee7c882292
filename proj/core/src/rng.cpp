#include "simarms/rng.hpp"

namespace simarms {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
  return mix64(mix64(root) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t derive_stream(std::uint64_t seed, StreamTag tag) noexcept {
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(tag)));
}

double counter_uniform(std::uint64_t key, std::uint64_t arm, std::uint64_t counter) noexcept {
  const std::uint64_t bits = mix64(mix64(key ^ mix64(arm)) + counter);
  // 53 high bits, shifted by half an ulp so 0 is never produced
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace simarms
