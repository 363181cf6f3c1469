// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hldg/ledger/codec.hpp"
#include "hldg/ledger/sha256.hpp"

namespace hldg::ledger {

/// Account identifier: sha256 of the owner's public key bytes.
using Address = Digest32;

enum class TxKind : uint8_t {
    Ruleset = 0,     // genesis only: canonical chain ruleset
    Issuance = 1,    // genesis only: initial cash/security credit
    Transfer = 2,    // signed account instruction
    TradeRecord = 3, // matched trade posted by the elected matcher
    Settlement = 4,  // net transfer applied by a clearing node
    Marker = 5,      // unsigned producer note; keeps block contents unique
};

enum class AssetKind : uint8_t { Cash = 0, Security = 1 };

struct Asset {
    AssetKind kind = AssetKind::Cash;
    std::string symbol; // empty for cash

    auto operator<=>(const Asset&) const = default;

    static Asset cash() { return {AssetKind::Cash, ""}; }
    static Asset security(std::string sym) { return {AssetKind::Security, std::move(sym)}; }
};

/// Signed, sequence-numbered account instruction. System kinds (Ruleset,
/// Issuance, Marker) carry no signature. The id (= Merkle leaf) covers the
/// full encoding including the signature; the payload hash used for
/// conflict detection covers everything except the signature.
struct Transaction {
    TxKind kind = TxKind::Marker;
    Address from{};
    Address to{};
    Asset asset;
    uint64_t amount = 0;
    uint64_t seq = 0;
    Bytes payload;
    Bytes sender_pubkey;
    Bytes signature;

    bool operator==(const Transaction&) const = default;

    bool is_signed_kind() const {
        return kind == TxKind::Transfer || kind == TxKind::TradeRecord ||
               kind == TxKind::Settlement;
    }

    /// Encoding without the signature; this is what gets signed.
    Bytes signing_bytes() const;
    Bytes encode() const;
    void encode_to(Writer& w) const;
    static Transaction decode(Reader& r);

    Digest32 id() const;           // sha256 over the full encoding
    Digest32 payload_hash() const; // sha256 over signing_bytes()
};

} // namespace hldg::ledger
