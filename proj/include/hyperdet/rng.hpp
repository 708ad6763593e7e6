#pragma once

#include <array>
#include <cstdint>

namespace hyperdet {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic random stream keyed by (master_seed, stream_id).
//
// Derivation (frozen; changing it changes every published output):
//   key   = splitmix64_mix(master_seed ^ splitmix64_mix(stream_id + 0x9E3779B97F4A7C15))
//   s[i]  = splitmix64_mix(key + (i + 1) * 0x9E3779B97F4A7C15), i = 0..3
// and the stream is xoshiro256** over that state. Uniform doubles take the top
// 53 bits of one output, so the byte stream is identical on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), unbiased (rejection on the top range).
  std::uint64_t uniform_below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
};

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return RngStream(master_seed, stream_id);
}

}  // namespace hyperdet
