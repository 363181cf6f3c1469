// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/consensus/fork_choice.hpp"

namespace hldg::consensus {

uint512 chain_work(const ledger::Chain& chain) {
    uint512 total = 0;
    for (const auto& b : chain.blocks) total += uint512(block_work(b.header.bits));
    return total;
}

std::optional<size_t> fork_choice(std::span<const ledger::Chain> candidates) {
    std::optional<size_t> best;
    uint512 best_work = 0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        const uint512 w = chain_work(candidates[i]);
        // Strict > keeps the first-seen chain on ties.
        if (!best || w > best_work) {
            best = i;
            best_work = w;
        }
    }
    return best;
}

} // namespace hldg::consensus
