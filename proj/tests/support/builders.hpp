// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hldg/consensus/difficulty.hpp"
#include "hldg/consensus/keys.hpp"
#include "hldg/consensus/miner.hpp"
#include "hldg/consensus/round_robin.hpp"
#include "hldg/ledger/chain.hpp"
#include "hldg/ledger/config.hpp"

namespace hldg::testutil {

using namespace hldg::ledger;

inline void demand(bool ok, const char* what) {
    if (!ok) throw std::runtime_error(std::string("test builder: ") + what);
}

/// Deterministic keypair for a test identity.
inline consensus::KeyPair test_keys(const std::string& label) {
    return consensus::keygen(sha256(label));
}

inline Transaction marker_tx(const std::string& note) {
    Transaction tx;
    tx.kind = TxKind::Marker;
    tx.payload = to_bytes(note);
    return tx;
}

inline Transaction make_transfer(const consensus::KeyPair& kp, const Address& to,
                                 const Asset& asset, uint64_t amount, uint64_t seq,
                                 const std::string& note = "") {
    Transaction tx;
    tx.kind = TxKind::Transfer;
    tx.from = consensus::address_of(kp.public_key);
    tx.to = to;
    tx.asset = asset;
    tx.amount = amount;
    tx.seq = seq;
    tx.payload = to_bytes(note);
    tx.sender_pubkey = kp.public_key;
    const Bytes msg = tx.signing_bytes();
    tx.signature = consensus::sign(kp.secret_key, std::span(msg.data(), msg.size()));
    return tx;
}

/// Rotation-mode ruleset with `n` validators named v0..v(n-1), all writers.
inline ChainConfig rr_config(size_t n, uint32_t epoch_length = 8) {
    ChainConfig cfg;
    cfg.consensus_mode = ConsensusMode::RoundRobin;
    cfg.permission_mode = PermissionMode::Private;
    cfg.epoch_length = epoch_length;
    cfg.initial_bits = 0;
    cfg.genesis_timestamp = 1000;
    for (size_t i = 0; i < n; ++i) {
        const NodeId id = "v" + std::to_string(i);
        cfg.validators.push_back({id, test_keys(id).public_key, 100});
        cfg.write_set.push_back(id);
    }
    return cfg;
}

/// Proof-of-work ruleset at an easy target so tests mine instantly.
inline ChainConfig pow_config(uint32_t bits = 0x207fffff, uint32_t interval = 100,
                              uint32_t window = 16) {
    ChainConfig cfg;
    cfg.consensus_mode = ConsensusMode::PoW;
    cfg.permission_mode = PermissionMode::Public;
    cfg.initial_bits = bits;
    cfg.target_interval = interval;
    cfg.retarget_window = window;
    cfg.max_retarget_factor = 4;
    cfg.genesis_timestamp = 1000;
    return cfg;
}

/// Extend a rotation chain by `count` blocks, each carrying a unique marker
/// plus any queued extra transactions (consumed one block at a time).
inline void grow_rr_chain(Chain& chain, const ChainConfig& cfg, size_t count,
                          std::vector<std::vector<Transaction>> extras = {}) {
    for (size_t i = 0; i < count; ++i) {
        const uint32_t height = chain.height();
        auto signer = consensus::scheduled_signer(chain, height, cfg);
        demand(signer.has_value(), "no scheduled signer");
        std::vector<Transaction> txs;
        txs.push_back(marker_tx("blk-" + std::to_string(height)));
        if (i < extras.size())
            for (auto& tx : extras[i]) txs.push_back(std::move(tx));
        auto res = consensus::rr_produce(chain, cfg, *signer, test_keys(*signer),
                                         std::move(txs),
                                         chain.tip().header.timestamp + 1);
        demand(res.produced, res.reason.c_str());
        chain.blocks.push_back(std::move(res.block));
    }
}

inline Chain build_rr_chain(const ChainConfig& cfg, size_t count) {
    Chain chain;
    chain.blocks.push_back(make_genesis(cfg));
    grow_rr_chain(chain, cfg, count);
    return chain;
}

/// Extend a proof-of-work chain by `count` mined blocks.
inline void grow_pow_chain(Chain& chain, const ChainConfig& cfg, size_t count,
                           uint32_t step = 0) {
    for (size_t i = 0; i < count; ++i) {
        const uint32_t height = chain.height();
        Block b;
        b.txs.push_back(marker_tx("blk-" + std::to_string(height)));
        b.header.prev_hash = chain.tip_hash();
        b.header.timestamp =
            chain.tip().header.timestamp + (step ? step : cfg.target_interval);
        b.header.bits = consensus::expected_bits(chain.blocks, height, cfg);
        b.header.merkle_root = *b.compute_merkle_root();
        auto mined = consensus::pow_mine(b.header);
        demand(mined.found, "mining failed");
        b.header = mined.header;
        chain.blocks.push_back(std::move(b));
    }
}

inline Chain build_pow_chain(const ChainConfig& cfg, size_t count, uint32_t step = 0) {
    Chain chain;
    chain.blocks.push_back(make_genesis(cfg));
    grow_pow_chain(chain, cfg, count, step);
    return chain;
}

} // namespace hldg::testutil
