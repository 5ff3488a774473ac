#pragma once

#include <cstdint>
#include <random>

namespace edgewalk {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for the stream identified by (master, a, b). Each coordinate is mixed
/// independently, so adding tasks never changes the seeds of existing ones.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ splitmix64(a + 0x632be59bd9b4e019ULL));
    h = splitmix64(h ^ splitmix64(b + 0x8cb92ba72f3d8dd7ULL));
    return h;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

/// Uniform integer in [0, bound). bound must be positive.
template <class Int>
inline Int uniform_below(Rng& rng, Int bound) {
    return std::uniform_int_distribution<Int>(0, bound - 1)(rng);
}

inline double uniform_unit(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace edgewalk
