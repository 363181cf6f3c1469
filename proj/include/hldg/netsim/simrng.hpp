// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hldg::netsim {

/// Simulation randomness. mt19937_64 gives an identical stream on every
/// platform, and the derived draws below are written out by hand because the
/// standard library's distribution objects are implementation-defined —
/// reports must be byte-identical wherever they are produced.
class SimRng {
public:
    explicit SimRng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] by rejection; lo == hi short-circuits.
    uint64_t uniform(uint64_t lo, uint64_t hi) {
        if (hi <= lo) return lo;
        const uint64_t span = hi - lo + 1;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return lo + v % span;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Exponential holding time with the given rate (events per tick).
    double exponential(double rate) {
        // log(0) is fenced off: uniform01() < 1 so 1-u > 0.
        return -std::log(1.0 - uniform01()) / rate;
    }

private:
    std::mt19937_64 gen_;
};

/// Stable stream splitter (splitmix64 finalizer) so each run of a
/// simulation gets an independent substream from one scenario seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t lane) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (lane + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace hldg::netsim
