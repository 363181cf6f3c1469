// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>

#include "hldg/ledger/block.hpp"

namespace hldg::consensus {

struct MineResult {
    bool found = false;
    ledger::BlockHeader header;  // solved header when found
    ledger::Digest32 hash{};     // its block hash
    uint64_t iterations = 0;     // headers hashed
};

/// Grind nonces from 0 until the header hashes below its target. When the
/// 32-bit nonce space is exhausted the timestamp is bumped by one tick and
/// the scan restarts, so the search is total. `max_iterations` caps the
/// number of attempts (0 = unbounded).
MineResult pow_mine(ledger::BlockHeader header, uint64_t max_iterations = 0);

} // namespace hldg::consensus
