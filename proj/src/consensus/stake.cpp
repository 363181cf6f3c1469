// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/consensus/stake.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "hldg/ledger/codec.hpp"

namespace hldg::consensus {

namespace {

using uint128 = boost::multiprecision::uint128_t;

uint128 draw_u128(const ledger::Digest32& seed) {
    ledger::Writer w;
    w.put_digest(seed);
    w.put_raw(std::span(reinterpret_cast<const uint8_t*>("pos"), 3));
    const ledger::Digest32 h = ledger::sha256(w.take());
    uint128 v = 0;
    for (size_t i = 0; i < 16; ++i) {
        v <<= 8;
        v |= h.bytes[i];
    }
    return v;
}

} // namespace

std::optional<ledger::NodeId> pos_elect_matcher(const ledger::Digest32& seed,
                                                const ledger::ChainConfig& cfg) {
    const auto table = cfg.stake_table(); // ordered by id
    uint128 total = 0;
    for (const auto& [id, stake] : table) total += stake;
    if (total == 0) return std::nullopt;

    uint128 point = draw_u128(seed) % total;
    for (const auto& [id, stake] : table) {
        if (point < stake) return id;
        point -= stake;
    }
    return std::nullopt; // unreachable
}

} // namespace hldg::consensus
