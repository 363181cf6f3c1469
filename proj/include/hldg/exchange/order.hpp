// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <string>

#include "hldg/consensus/keys.hpp"
#include "hldg/ledger/codec.hpp"
#include "hldg/ledger/tx.hpp"

namespace hldg::exchange {

using ledger::Address;
using ledger::Bytes;
using ledger::Digest32;

enum class Side : uint8_t { Buy = 0, Sell = 1 };

/// Signed limit order. `seq` is the trader's order sequence; two distinct
/// orders reusing one (trader, seq) slot are the order-flow analogue of a
/// double spend and are surfaced by detect_conflict.
struct Order {
    Address trader{};
    Side side = Side::Buy;
    std::string security;
    uint64_t qty = 0;
    uint64_t price = 0; // cash per unit
    uint64_t seq = 0;
    Bytes pubkey;
    Bytes signature;

    bool operator==(const Order&) const = default;

    /// Everything but the signature; this is what gets signed.
    Bytes signing_bytes() const;
    /// Conflict/identity key: sha256 over signing_bytes().
    Digest32 id() const;

    Bytes encode() const;
    void encode_to(ledger::Writer& w) const;
    static Order decode(ledger::Reader& r);
};

Order make_order(const consensus::KeyPair& kp, Side side, const std::string& security,
                 uint64_t qty, uint64_t price, uint64_t seq);

bool verify_order_signature(const Order& o);

/// One match between a buy and a sell, priced at the resting order.
struct Trade {
    uint64_t seq = 0; // venue-wide trade sequence
    Digest32 buy_order{};
    Digest32 sell_order{};
    Address buyer{};
    Address seller{};
    std::string security;
    uint64_t qty = 0;
    uint64_t price = 0;
    uint32_t trade_day = 0;

    bool operator==(const Trade&) const = default;

    uint64_t notional() const { return qty * price; }

    Bytes encode() const;
    void encode_to(ledger::Writer& w) const;
    static Trade decode(ledger::Reader& r);
};

} // namespace hldg::exchange
