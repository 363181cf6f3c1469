// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/ledger/block.hpp"

#include <cstring>

namespace hldg::ledger {

static void put_u32_at(uint8_t* p, uint32_t v) {
    for (int i = 0; i < 4; ++i) p[i] = uint8_t(v >> (8 * i));
}

static uint32_t get_u32_at(const uint8_t* p) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(p[i]) << (8 * i);
    return v;
}

std::array<uint8_t, kHeaderSize> serialize_header(const BlockHeader& h) {
    std::array<uint8_t, kHeaderSize> out{};
    put_u32_at(out.data(), h.version);
    std::memcpy(out.data() + 4, h.prev_hash.bytes.data(), 32);
    std::memcpy(out.data() + 36, h.merkle_root.bytes.data(), 32);
    put_u32_at(out.data() + 68, h.timestamp);
    put_u32_at(out.data() + 72, h.bits);
    put_u32_at(out.data() + 76, h.nonce);
    return out;
}

BlockHeader deserialize_header(std::span<const uint8_t> data) {
    if (data.size() != kHeaderSize) throw CodecError("header must be 80 bytes");
    BlockHeader h;
    h.version = get_u32_at(data.data());
    std::memcpy(h.prev_hash.bytes.data(), data.data() + 4, 32);
    std::memcpy(h.merkle_root.bytes.data(), data.data() + 36, 32);
    h.timestamp = get_u32_at(data.data() + 68);
    h.bits = get_u32_at(data.data() + 72);
    h.nonce = get_u32_at(data.data() + 76);
    return h;
}

Digest32 block_hash(const BlockHeader& h) {
    auto raw = serialize_header(h);
    return dsha256(raw);
}

std::optional<Digest32> Block::compute_merkle_root() const {
    std::vector<Digest32> leaves;
    leaves.reserve(txs.size());
    for (const auto& tx : txs) leaves.push_back(tx.id());
    return merkle_root(leaves);
}

void Block::encode_to(Writer& w) const {
    w.put_raw(serialize_header(header));
    w.put_u8(signer ? 1 : 0);
    if (signer) {
        w.put_string(signer->node);
        w.put_var_bytes(signer->signature);
    }
    w.put_u32(static_cast<uint32_t>(txs.size()));
    for (const auto& tx : txs) tx.encode_to(w);
}

Bytes Block::encode() const {
    Writer w;
    encode_to(w);
    return w.take();
}

Block Block::decode(Reader& r) {
    Block b;
    std::array<uint8_t, kHeaderSize> raw;
    r.get_raw(raw.data(), raw.size());
    b.header = deserialize_header(raw);
    if (r.get_u8() != 0) {
        BlockSigner s;
        s.node = r.get_string();
        s.signature = r.get_var_bytes();
        b.signer = std::move(s);
    }
    uint32_t n = r.get_u32();
    b.txs.reserve(n);
    for (uint32_t i = 0; i < n; ++i) b.txs.push_back(Transaction::decode(r));
    return b;
}

Block make_genesis(const ChainConfig& cfg) {
    Block genesis;

    Transaction ruleset;
    ruleset.kind = TxKind::Ruleset;
    ruleset.payload = cfg.canonical_bytes();
    genesis.txs.push_back(std::move(ruleset));

    for (const auto& gi : cfg.genesis_issuances) {
        Transaction tx;
        tx.kind = TxKind::Issuance;
        tx.to = gi.to;
        tx.asset = gi.asset;
        tx.amount = gi.amount;
        genesis.txs.push_back(std::move(tx));
    }

    genesis.header.version = 1;
    genesis.header.prev_hash = Digest32{};
    genesis.header.merkle_root = *genesis.compute_merkle_root();
    genesis.header.timestamp = cfg.genesis_timestamp;
    genesis.header.bits = cfg.initial_bits;
    genesis.header.nonce = 0;
    return genesis;
}

std::optional<ChainConfig> genesis_config(const Block& genesis) {
    if (genesis.txs.empty()) return std::nullopt;
    const Transaction& tx0 = genesis.txs.front();
    if (tx0.kind != TxKind::Ruleset) return std::nullopt;
    return ChainConfig::from_canonical(tx0.payload);
}

} // namespace hldg::ledger
