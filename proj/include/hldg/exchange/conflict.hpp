// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <span>
#include <vector>

#include "hldg/exchange/order.hpp"
#include "hldg/ledger/tx.hpp"

namespace hldg::exchange {

/// One (actor, seq) slot claimed by materially different instructions. The
/// indices point into the scanned pool, in pool order; exact byte-for-byte
/// duplicates of one instruction are not conflicts, just retransmits.
struct ConflictGroup {
    Address actor{};
    uint64_t seq = 0;
    std::vector<size_t> members;
};

struct ConflictReport {
    std::vector<ConflictGroup> groups;

    bool clean() const { return groups.empty(); }
};

/// Double-spend scan over signed transfers: two transfers from one sender
/// reusing a sequence number with different payloads.
ConflictReport detect_conflict(std::span<const ledger::Transaction> pool);

/// The same scan over order flow: one trader reusing an order sequence for
/// materially different orders.
ConflictReport detect_conflict(std::span<const Order> pool);

} // namespace hldg::exchange
