// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hldg/consensus/keys.hpp"
#include "hldg/ledger/block.hpp"
#include "hldg/ledger/chain.hpp"
#include "hldg/ledger/config.hpp"

namespace hldg::consensus {

/// Writer rotation for one epoch: a seed-keyed permutation of the permitted
/// writer set. Block at height h (h >= 1) belongs to epoch (h-1)/epoch_length
/// and slot (h-1)%epoch_length; the signer is order[slot % order.size()].
struct Schedule {
    uint32_t epoch = 0;
    ledger::Digest32 seed{};
    std::vector<ledger::NodeId> order;

    const ledger::NodeId& signer_for_slot(uint32_t slot) const {
        return order[slot % order.size()];
    }
};

/// Permute `writers` by a Fisher-Yates shuffle drawing from DigestRng(seed).
std::vector<ledger::NodeId> shuffle_writers(std::vector<ledger::NodeId> writers,
                                            const ledger::Digest32& seed);

/// Epoch seed: hash of the block at height epoch*epoch_length (the genesis
/// hash for epoch 0). Chains shorter than that anchor cannot schedule yet.
std::optional<ledger::Digest32> epoch_seed(const ledger::Chain& chain, uint32_t epoch,
                                           const ledger::ChainConfig& cfg);

/// Full schedule for the epoch containing `height`.
std::optional<Schedule> rr_schedule(const ledger::Chain& chain, uint32_t height,
                                    const ledger::ChainConfig& cfg);

/// Writer a valid block at `height` must be signed by.
std::optional<ledger::NodeId> scheduled_signer(const ledger::Chain& chain,
                                               uint32_t height,
                                               const ledger::ChainConfig& cfg);

struct ProduceResult {
    bool produced = false;
    std::string reason;       // set when !produced
    ledger::Block block;      // signed block on success
};

/// Build and sign the next block if `node` holds the slot. The signature
/// covers the block hash, so any header or body change invalidates it.
ProduceResult rr_produce(const ledger::Chain& chain, const ledger::ChainConfig& cfg,
                         const ledger::NodeId& node, const KeyPair& keys,
                         std::vector<ledger::Transaction> txs, uint32_t timestamp);

/// Verify the signer recorded on `block` is scheduled at `height` and its
/// signature over the block hash checks out against the registry in `cfg`.
bool verify_block_signature(const ledger::Block& block, const ledger::ChainConfig& cfg);

} // namespace hldg::consensus
