#include "hyperdet/rng.hpp"

#include <bit>

#include "hyperdet/error.hpp"

namespace hyperdet {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
  const std::uint64_t key = splitmix64_mix(master_seed ^ splitmix64_mix(stream_id + kGolden));
  for (std::size_t i = 0; i < state_.size(); ++i) {
    state_[i] = splitmix64_mix(key + (i + 1) * kGolden);
  }
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("uniform_below: bound must be positive");
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= limit) return x % bound;
  }
}

}  // namespace hyperdet
