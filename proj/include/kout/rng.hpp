#pragma once

#include <cstdint>
#include <random>

namespace kout {

/// Identifies one reproducible random stream: `seed` is the experiment seed,
/// `stream` is usually the replicate index.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// All randomness comes from a 64-bit Mersenne twister.
using Engine = std::mt19937_64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Seeds an engine from (seed, stream). The stream index is folded into the
/// splitmix64 state after the first output, so neighbouring streams of one
/// seed and neighbouring seeds of one stream both decorrelate.
inline Engine make_engine(RngSpec spec) {
  std::uint64_t state = spec.seed;
  std::uint64_t words[4];
  words[0] = detail::splitmix64(state);
  state ^= spec.stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL;
  for (int i = 1; i < 4; ++i) words[i] = detail::splitmix64(state);
  std::seed_seq seq{
      static_cast<std::uint32_t>(words[0]), static_cast<std::uint32_t>(words[0] >> 32),
      static_cast<std::uint32_t>(words[1]), static_cast<std::uint32_t>(words[1] >> 32),
      static_cast<std::uint32_t>(words[2]), static_cast<std::uint32_t>(words[2] >> 32),
      static_cast<std::uint32_t>(words[3]), static_cast<std::uint32_t>(words[3] >> 32)};
  return Engine(seq);
}

}  // namespace kout
