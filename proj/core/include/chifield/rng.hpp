#pragma once

// Counter-based random numbers (Philox4x32-10). Every variate is a pure
// function of (seed, stream, index), so replicates, permutations and sphere
// samples can be generated in any order on any number of threads and still
// come out bit-identical.

#include <array>
#include <cstdint>

namespace chifield::rng {

namespace detail {
inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}
}  // namespace detail

/// Philox4x32, 10 rounds; reference counter/key conventions.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key) {
  detail::philox_round(counter, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += detail::kPhiloxW0;
    key[1] += detail::kPhiloxW1;
    detail::philox_round(counter, key);
  }
  return counter;
}

/// 64 bits keyed by (seed, stream, index).
inline std::uint64_t bits64(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const auto out = philox4x32(
      {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
       static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  return out[0] | (static_cast<std::uint64_t>(out[1]) << 32);
}

/// Uniform in the open interval (0,1); never returns 0 or 1.
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return (static_cast<double>(bits64(seed, stream, index) >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via inverse CDF of the keyed uniform (defined in special.cpp).
double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace chifield::rng
