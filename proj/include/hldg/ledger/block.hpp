// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hldg/ledger/config.hpp"
#include "hldg/ledger/merkle.hpp"
#include "hldg/ledger/tx.hpp"

namespace hldg::ledger {

constexpr size_t kHeaderSize = 80;

struct BlockHeader {
    uint32_t version = 1;
    Digest32 prev_hash{};
    Digest32 merkle_root{};
    uint32_t timestamp = 0; // ticks since the chain's epoch
    uint32_t bits = 0;      // compact difficulty
    uint32_t nonce = 0;

    bool operator==(const BlockHeader&) const = default;
};

/// version(4 LE) || prev_hash(32) || merkle_root(32) || timestamp(4 LE) ||
/// bits(4 LE) || nonce(4 LE) — exactly 80 bytes.
std::array<uint8_t, kHeaderSize> serialize_header(const BlockHeader& h);
BlockHeader deserialize_header(std::span<const uint8_t> data);

/// Block identity: sha256(sha256(serialize_header(h))).
Digest32 block_hash(const BlockHeader& h);

/// Producer attestation used in round-robin mode.
struct BlockSigner {
    NodeId node;
    Bytes signature; // over block_hash(header)

    bool operator==(const BlockSigner&) const = default;
};

struct Block {
    BlockHeader header;
    std::vector<Transaction> txs;
    std::optional<BlockSigner> signer;

    bool operator==(const Block&) const = default;

    Digest32 hash() const { return block_hash(header); }
    /// Merkle root over the transaction ids, in order.
    std::optional<Digest32> compute_merkle_root() const;

    void encode_to(Writer& w) const;
    Bytes encode() const;
    static Block decode(Reader& r);
};

/// Genesis: all-zero prev_hash; tx 0 commits the canonical ruleset, followed
/// by one issuance transaction per configured genesis issuance.
Block make_genesis(const ChainConfig& cfg);

/// Reads the ruleset back out of a genesis block's tx 0.
std::optional<ChainConfig> genesis_config(const Block& genesis);

} // namespace hldg::ledger
