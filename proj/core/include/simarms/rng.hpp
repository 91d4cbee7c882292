#pragma once

#include <cstdint>

namespace simarms {

// Seed plumbing. Every trial has one root seed; independent sub-streams are
// derived by hashing (seed, tag) so that each consumer (mean generation,
// reward generation, permutation) draws from its own stream.

enum class StreamTag : std::uint64_t {
  Means = 0x6d65616e73ULL,
  Rewards = 0x7277647300ULL,
  Permutation = 0x7065726dULL,
};

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the index-th child of `root` (e.g. trial seeds of a batch).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept;

/// Seed of a named sub-stream of `seed`.
std::uint64_t derive_stream(std::uint64_t seed, StreamTag tag) noexcept;

/// Counter-based uniform draw in the open interval (0, 1). The value depends
/// only on (key, arm, counter), so the k-th draw of an arm is fixed no matter
/// how many other arms exist or in which order they are sampled.
double counter_uniform(std::uint64_t key, std::uint64_t arm, std::uint64_t counter) noexcept;

}  // namespace simarms
