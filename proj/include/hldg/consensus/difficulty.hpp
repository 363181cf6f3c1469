// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <optional>
#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "hldg/ledger/block.hpp"
#include "hldg/ledger/config.hpp"

namespace hldg::consensus {

using uint256 = boost::multiprecision::uint256_t;
using uint512 = boost::multiprecision::uint512_t;

/// Compact difficulty: 1-byte exponent E, 3-byte big-endian mantissa M,
/// target = M * 256^(E-3). The mantissa's top bit must stay clear so the
/// target reads as an unsigned value.
uint256 expand_bits(uint32_t bits);
uint32_t compress_target(const uint256& target);

/// Difficulty threshold in both forms.
struct DifficultyTarget {
    uint32_t bits = 0;
    uint256 expanded;

    static DifficultyTarget from_bits(uint32_t bits) { return {bits, expand_bits(bits)}; }
    bool minable() const { return expanded > 0; }
};

uint256 digest_to_uint256(const ledger::Digest32& d); // big-endian read

/// True iff block_hash(h), as a 256-bit big-endian integer, is strictly
/// below the header's expanded target.
bool check_pow(const ledger::BlockHeader& h);

/// Per-block work 2^256 / (target + 1); zero for an unminable target.
uint256 block_work(uint32_t bits);

struct RetargetError {
    std::string reason;
};

/// New target = old * (actual window duration / expected), clamped to
/// [old / max_factor, old * max_factor], recompressed to bits.
/// `window_timestamps` must hold retarget_window + 1 non-decreasing stamps.
std::optional<uint32_t> retarget(uint32_t current_bits,
                                 std::span<const uint32_t> window_timestamps,
                                 const ledger::ChainConfig& cfg,
                                 RetargetError* error = nullptr);

/// Compact difficulty the block at `height` must carry: initial_bits through
/// the first window, then retargeted every retarget_window blocks from the
/// preceding window's timestamps.
uint32_t expected_bits(const std::vector<ledger::Block>& blocks, uint32_t height,
                       const ledger::ChainConfig& cfg);

} // namespace hldg::consensus
