#pragma once

#include <cstdint>
#include <random>

namespace permreg {

/// All randomness in the library flows through explicitly seeded engines.
/// Seeds for substreams are derived with a counter-based splitmix64 chain so
/// that trials are reproducible independently of execution order.
using RngEngine = std::mt19937_64;

inline constexpr std::uint64_t kSeedGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += kSeedGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Mix one more word into a seed; order-sensitive and collision-resistant
/// enough for stream separation.
inline std::uint64_t seed_combine(std::uint64_t seed, std::uint64_t word) {
  return splitmix64(seed ^ (word + kSeedGolden + (seed << 6) + (seed >> 2)));
}

/// Named substreams hanging off an instance or trial seed.
enum class StreamTag : std::uint64_t {
  Design = 1,     // entries of A
  Noise = 2,      // entries of w
  Truth = 3,      // draw of the true permutation
  Direction = 4,  // direction of x* on the sphere (d > 1)
  Restart = 5,    // heuristic restarts
};

inline std::uint64_t substream_seed(std::uint64_t seed, StreamTag tag) {
  return seed_combine(seed, static_cast<std::uint64_t>(tag));
}

/// Per-trial seed for grid point (n_index, gamma_index) and trial index.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t n_index,
                                std::uint64_t gamma_index, std::uint64_t trial_index) {
  return seed_combine(seed_combine(seed_combine(master_seed, n_index), gamma_index),
                      trial_index);
}

inline RngEngine make_engine(std::uint64_t seed) { return RngEngine(seed); }

}  // namespace permreg
