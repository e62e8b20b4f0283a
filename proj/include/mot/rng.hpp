#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace mot {

// Deterministic draws on top of std::mt19937_64. The standard pins the
// engine's output sequence but not the distributions', so the mappings are
// spelled out here; identical seeds give identical scenarios on every
// platform and standard library.

// Uniform in [0, 1), 53 bits of precision.
inline double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * unit_real(rng);
}

// Uniform in {0, ..., n-1}, bias-free via rejection.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    assert(n > 0);
    const std::uint64_t n64 = n;
    // 2^64 mod n; values >= 2^64 - rem are rejected
    const std::uint64_t rem = (std::uint64_t(-1) % n64 + 1) % n64;
    const std::uint64_t cutoff = std::uint64_t(-1) - rem;
    std::uint64_t r = rng();
    while (r > cutoff) r = rng();
    return static_cast<std::size_t>(r % n64);
}

}  // namespace mot
