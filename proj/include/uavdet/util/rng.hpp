#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace uavdet {

// std::mt19937_64 output is fully specified by the standard; the transforms
// below avoid std::*_distribution, whose results differ between standard
// library implementations. All randomness in the project flows through
// explicitly seeded engines so runs are reproducible bit by bit.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    // Modulo bias is < 2^-40 for the sizes used here.
    return rng() % n;
}

/// Standard normal via Box-Muller.
inline double normal01(Rng& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// SplitMix64 step, used to derive independent stream seeds from one root seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive a child seed from a root seed and a stream tag.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag) {
    return splitmix64(root ^ splitmix64(tag));
}

template <typename T>
void shuffle_indices(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace uavdet
