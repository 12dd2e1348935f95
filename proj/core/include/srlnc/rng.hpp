#pragma once

#include <cstdint>
#include <random>

namespace srlnc {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser; decorrelates nearby seeds.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Independent stream for one Monte Carlo trial, seeded from
/// splitmix64(base_seed) ^ trial_index and never from the worker id. Mixing
/// the base first keeps small neighbouring seeds (1, 2, ...) from sharing
/// the same set of trial streams.
[[nodiscard]] inline Rng trial_stream(std::uint64_t base_seed, std::uint64_t trial_index) {
    return Rng(splitmix64(splitmix64(base_seed) ^ trial_index));
}

/// Seed for a named sub-experiment (grid point, simulation leg) derived from
/// a user seed, so that sibling experiments never share trial streams.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t a,
                                                  std::uint64_t b = 0) noexcept {
    return splitmix64(splitmix64(base_seed ^ splitmix64(a)) ^ splitmix64(b + 0x5851F42D4C957F2Dull));
}

/// Uniform double in [0,1) from the top 53 bits of one draw.
[[nodiscard]] inline double unit_uniform(Rng& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace srlnc
