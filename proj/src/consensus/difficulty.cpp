// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/consensus/difficulty.hpp"

#include <algorithm>

namespace hldg::consensus {

uint256 expand_bits(uint32_t bits) {
    const uint32_t exponent = bits >> 24;
    const uint32_t mantissa = bits & 0x00ffffff;
    if (mantissa == 0) return 0;
    uint256 target = mantissa;
    if (exponent >= 3) {
        target <<= 8 * (exponent - 3);
    } else {
        target >>= 8 * (3 - exponent);
    }
    return target;
}

uint32_t compress_target(const uint256& target) {
    if (target == 0) return 0;
    // Count significant bytes.
    uint32_t nbytes = 0;
    for (uint256 t = target; t > 0; t >>= 8) ++nbytes;
    uint32_t mantissa;
    if (nbytes <= 3) {
        mantissa = static_cast<uint32_t>(target) << (8 * (3 - nbytes));
    } else {
        mantissa = static_cast<uint32_t>(target >> (8 * (nbytes - 3)));
    }
    // Keep the sign bit clear so expand/compress round-trips as unsigned.
    if (mantissa & 0x00800000) {
        mantissa >>= 8;
        ++nbytes;
    }
    return (nbytes << 24) | mantissa;
}

uint256 digest_to_uint256(const ledger::Digest32& d) {
    uint256 v = 0;
    for (uint8_t byte : d.bytes) {
        v <<= 8;
        v |= byte;
    }
    return v;
}

bool check_pow(const ledger::BlockHeader& h) {
    const uint256 target = expand_bits(h.bits);
    if (target == 0) return false;
    const ledger::Digest32 hash = ledger::block_hash(h);
    return digest_to_uint256(hash) < target;
}

uint256 block_work(uint32_t bits) {
    const uint256 target = expand_bits(bits);
    if (target == 0) return 0;
    // 2^256 / (target+1) without 257-bit arithmetic:
    // == (~target / (target+1)) + 1 since ~target = 2^256 - 1 - target.
    return (~target / (target + 1)) + 1;
}

std::optional<uint32_t> retarget(uint32_t current_bits,
                                 std::span<const uint32_t> window_timestamps,
                                 const ledger::ChainConfig& cfg,
                                 RetargetError* error) {
    const auto fail = [&](std::string why) -> std::optional<uint32_t> {
        if (error) error->reason = std::move(why);
        return std::nullopt;
    };
    if (cfg.retarget_window == 0) return fail("retarget window is zero");
    if (cfg.target_interval == 0) return fail("target interval is zero");
    if (cfg.max_retarget_factor < 2) return fail("retarget factor must exceed 1");
    if (window_timestamps.size() != static_cast<size_t>(cfg.retarget_window) + 1)
        return fail("timestamp window has wrong size");
    if (!std::is_sorted(window_timestamps.begin(), window_timestamps.end()))
        return fail("timestamps not monotonic");

    const uint256 old_target = expand_bits(current_bits);
    if (old_target == 0) return fail("current target unminable");

    uint256 actual = static_cast<uint64_t>(window_timestamps.back()) -
                     static_cast<uint64_t>(window_timestamps.front());
    const uint64_t expected =
        static_cast<uint64_t>(cfg.retarget_window) * cfg.target_interval;
    const uint64_t factor = cfg.max_retarget_factor;
    // Clamp the measured duration so the target moves at most factor x.
    actual = std::clamp(actual, uint256(expected / factor), uint256(expected) * factor);
    if (actual == 0) actual = 1;

    uint256 next = uint256(uint512(old_target) * actual / expected);
    if (next == 0) next = 1;
    // Never exceed the all-ones analogue of the initial target's scale: cap
    // at the widest compactly representable value.
    const uint256 max_target = expand_bits(0x20ffffff);
    if (next > max_target) next = max_target;
    return compress_target(next);
}

uint32_t expected_bits(const std::vector<ledger::Block>& blocks, uint32_t height,
                       const ledger::ChainConfig& cfg) {
    const uint32_t w = cfg.retarget_window;
    if (w == 0 || height == 0) return cfg.initial_bits;
    // Difficulty changes at heights 1 + k*w for k >= 1, computed from the
    // w+1 timestamps at heights (k-1)*w .. k*w.
    const uint32_t epoch = (height - 1) / w; // 0 for the first window
    if (epoch == 0) return cfg.initial_bits;
    const uint32_t boundary = epoch * w; // last height of the previous window
    if (blocks.size() <= boundary) return cfg.initial_bits;
    // Recurse one epoch at a time from the front; cheap since callers walk
    // the chain monotonically and the window sizes are small.
    uint32_t bits = cfg.initial_bits;
    for (uint32_t k = 1; k <= epoch; ++k) {
        std::vector<uint32_t> stamps;
        stamps.reserve(w + 1);
        for (uint32_t hgt = (k - 1) * w; hgt <= k * w; ++hgt)
            stamps.push_back(blocks[hgt].header.timestamp);
        auto next = retarget(bits, stamps, cfg);
        if (!next) return bits; // malformed window: hold difficulty
        bits = *next;
    }
    return bits;
}

} // namespace hldg::consensus
