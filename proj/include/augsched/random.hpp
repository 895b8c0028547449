//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AUGSCHED_RANDOM_HPP_
#define AUGSCHED_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace augsched {

// All simulation randomness flows through one engine per run so that a run is
// reproducible from its seed.
using RandomStream = std::mt19937_64;

inline RandomStream make_stream(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  return RandomStream(seq);
}

inline bool draw_bernoulli(RandomStream &rng, double p) {
  if (p <= 0.0)
    return false;
  if (p >= 1.0)
    return true;
  return std::bernoulli_distribution(p)(rng);
}

// Uniform index in [0, n). n must be positive.
inline std::size_t draw_index(RandomStream &rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace augsched

#endif  // AUGSCHED_RANDOM_HPP_
