#pragma once

// Seeded sampling. Each trial gets its own engine seeded from (seed, trial)
// so results do not depend on how trials are scheduled. Bounded draws are
// done here rather than with std::uniform_int_distribution, whose output
// differs between standard libraries.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace realityvote {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

/// Uniform integer in [0, bound) by multiply-and-reject.
inline std::uint64_t bounded(std::mt19937_64& g, std::uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>(g()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        std::uint64_t floor = (0 - bound) % bound;
        while (low < floor) {
            m = static_cast<__uint128_t>(g()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

/// k distinct indices from [0, n), uniformly, via a partial Fisher-Yates pass.
inline std::vector<std::size_t> sample_without_replacement(std::mt19937_64& g, std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(bounded(g, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace realityvote
