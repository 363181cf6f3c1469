// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/consensus/round_robin.hpp"

#include <algorithm>
#include <utility>

#include "hldg/consensus/rng.hpp"

namespace hldg::consensus {

std::vector<ledger::NodeId> shuffle_writers(std::vector<ledger::NodeId> writers,
                                            const ledger::Digest32& seed) {
    // Canonical input order first so the permutation depends only on the
    // seed and the set, not on roster file order.
    std::sort(writers.begin(), writers.end());
    DigestRng rng(seed);
    for (size_t i = writers.size(); i > 1; --i) {
        const size_t j = static_cast<size_t>(rng.bounded(i));
        std::swap(writers[i - 1], writers[j]);
    }
    return writers;
}

std::optional<ledger::Digest32> epoch_seed(const ledger::Chain& chain, uint32_t epoch,
                                           const ledger::ChainConfig& cfg) {
    if (cfg.epoch_length == 0) return std::nullopt;
    const uint64_t anchor = static_cast<uint64_t>(epoch) * cfg.epoch_length;
    if (anchor >= chain.blocks.size()) return std::nullopt;
    return chain.blocks[anchor].hash();
}

std::optional<Schedule> rr_schedule(const ledger::Chain& chain, uint32_t height,
                                    const ledger::ChainConfig& cfg) {
    if (height == 0 || cfg.epoch_length == 0 || cfg.write_set.empty())
        return std::nullopt;
    Schedule s;
    s.epoch = (height - 1) / cfg.epoch_length;
    auto seed = epoch_seed(chain, s.epoch, cfg);
    if (!seed) return std::nullopt;
    s.seed = *seed;
    s.order = shuffle_writers(cfg.write_set, s.seed);
    return s;
}

std::optional<ledger::NodeId> scheduled_signer(const ledger::Chain& chain,
                                               uint32_t height,
                                               const ledger::ChainConfig& cfg) {
    auto sched = rr_schedule(chain, height, cfg);
    if (!sched) return std::nullopt;
    const uint32_t slot = (height - 1) % cfg.epoch_length;
    return sched->signer_for_slot(slot);
}

ProduceResult rr_produce(const ledger::Chain& chain, const ledger::ChainConfig& cfg,
                         const ledger::NodeId& node, const KeyPair& keys,
                         std::vector<ledger::Transaction> txs, uint32_t timestamp) {
    ProduceResult r;
    if (chain.blocks.empty()) {
        r.reason = "chain has no genesis";
        return r;
    }
    const uint32_t height = static_cast<uint32_t>(chain.blocks.size());
    auto signer = scheduled_signer(chain, height, cfg);
    if (!signer) {
        r.reason = "no schedule for height";
        return r;
    }
    if (*signer != node) {
        r.reason = "not scheduled: slot belongs to " + *signer;
        return r;
    }

    ledger::Block b;
    b.txs = std::move(txs);
    b.header.prev_hash = chain.tip_hash();
    b.header.timestamp = timestamp;
    b.header.bits = 0; // rotation chains carry no work requirement
    b.header.nonce = 0;
    if (auto root = b.compute_merkle_root()) {
        b.header.merkle_root = *root;
    } else {
        r.reason = "refusing to sign an empty block";
        return r;
    }

    const ledger::Digest32 h = b.hash();
    ledger::BlockSigner sig;
    sig.node = node;
    sig.signature = sign(keys.secret_key, std::span(h.bytes.data(), h.bytes.size()));
    b.signer = std::move(sig);

    r.produced = true;
    r.block = std::move(b);
    return r;
}

bool verify_block_signature(const ledger::Block& block, const ledger::ChainConfig& cfg) {
    if (!block.signer) return false;
    const auto* v = cfg.find_validator(block.signer->node);
    if (!v) return false;
    const ledger::Digest32 h = block.hash();
    return verify(v->pubkey, std::span(h.bytes.data(), h.bytes.size()),
                  block.signer->signature);
}

} // namespace hldg::consensus
