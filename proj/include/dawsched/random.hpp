#pragma once

#include <cstdint>
#include <random>

namespace dawsched {

using rng_type = std::mt19937_64;

// splitmix64 finalizer; used to derive independent stream seeds from a master seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix_seed(master ^ mix_seed(index));
}

// Uniform integer in [0, bound) by modulo reduction of one raw draw.
inline std::uint64_t draw_below(rng_type& rng, std::uint64_t bound) {
    return rng() % bound;
}

// Uniform real in [0, 1) from the top 53 bits of one raw draw.
inline double draw_unit(rng_type& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double draw_real(rng_type& rng, double lo, double hi) {
    return lo + (hi - lo) * draw_unit(rng);
}

} // namespace dawsched
