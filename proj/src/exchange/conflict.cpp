// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/exchange/conflict.hpp"

#include <map>
#include <set>

namespace hldg::exchange {

namespace {

struct SlotUse {
    std::vector<size_t> members;
    std::set<Digest32> payloads;
};

template <typename Pool, typename Key, typename Payload>
ConflictReport scan(const Pool& pool, Key key, Payload payload) {
    std::map<std::pair<Address, uint64_t>, SlotUse> slots;
    for (size_t i = 0; i < pool.size(); ++i) {
        SlotUse& use = slots[key(pool[i])];
        use.members.push_back(i);
        use.payloads.insert(payload(pool[i]));
    }
    ConflictReport report;
    for (const auto& [slot, use] : slots) {
        if (use.payloads.size() < 2) continue; // retransmits are benign
        report.groups.push_back({slot.first, slot.second, use.members});
    }
    return report;
}

} // namespace

ConflictReport detect_conflict(std::span<const ledger::Transaction> pool) {
    return scan(
        pool,
        [](const ledger::Transaction& tx) { return std::make_pair(tx.from, tx.seq); },
        [](const ledger::Transaction& tx) { return tx.payload_hash(); });
}

ConflictReport detect_conflict(std::span<const Order> pool) {
    return scan(
        pool,
        [](const Order& o) { return std::make_pair(o.trader, o.seq); },
        [](const Order& o) { return o.id(); });
}

} // namespace hldg::exchange
