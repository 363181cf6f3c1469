// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/consensus/miner.hpp"

#include "hldg/consensus/difficulty.hpp"

namespace hldg::consensus {

MineResult pow_mine(ledger::BlockHeader header, uint64_t max_iterations) {
    MineResult r;
    const uint256 target = expand_bits(header.bits);
    if (target == 0) return r; // unminable

    header.nonce = 0;
    while (true) {
        const auto bytes = ledger::serialize_header(header);
        const ledger::Digest32 h =
            ledger::dsha256(std::span(bytes.data(), bytes.size()));
        ++r.iterations;
        if (digest_to_uint256(h) < target) {
            r.found = true;
            r.header = header;
            r.hash = h;
            return r;
        }
        if (max_iterations != 0 && r.iterations >= max_iterations) return r;
        if (header.nonce == UINT32_MAX) {
            // Nonce space spent: move time forward one tick and rescan.
            header.nonce = 0;
            ++header.timestamp;
        } else {
            ++header.nonce;
        }
    }
}

} // namespace hldg::consensus
