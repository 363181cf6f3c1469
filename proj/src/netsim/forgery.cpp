// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/netsim/forgery.hpp"

#include <span>
#include <stdexcept>

#include "hldg/consensus/difficulty.hpp"
#include "hldg/consensus/miner.hpp"
#include "hldg/ledger/codec.hpp"
#include "hldg/ledger/sha256.hpp"

namespace hldg::netsim {

using ledger::Block;
using ledger::Chain;
using ledger::ChainConfig;
using ledger::Digest32;
using ledger::Transaction;
using ledger::TxKind;

std::string to_string(ForgeryStrategy s)
{
    switch (s) {
    case ForgeryStrategy::NoRework: return "no_rework";
    case ForgeryStrategy::ReworkNoPow: return "rework_no_pow";
    case ForgeryStrategy::FullRemine: return "full_remine";
    case ForgeryStrategy::RrWithoutKeys: return "rr_without_keys";
    }
    return "unknown";
}

std::optional<ForgeryStrategy> forgery_strategy_from_string(const std::string& name)
{
    if (name == "no_rework") return ForgeryStrategy::NoRework;
    if (name == "rework_no_pow") return ForgeryStrategy::ReworkNoPow;
    if (name == "full_remine") return ForgeryStrategy::FullRemine;
    if (name == "rr_without_keys") return ForgeryStrategy::RrWithoutKeys;
    return std::nullopt;
}

namespace {

/// Rewrites one transaction payload in place; markers are preferred because
/// they carry no signature, so the edit survives every rework strategy.
void edit_block_payload(Block& b, uint64_t variant)
{
    size_t index = 0;
    for (size_t i = 0; i < b.txs.size(); ++i) {
        if (b.txs[i].kind == TxKind::Marker) {
            index = i;
            break;
        }
    }
    ledger::Writer w;
    w.put_u64(variant);
    const ledger::Bytes extra = w.take();
    Transaction& tx = b.txs[index];
    tx.payload.insert(tx.payload.end(), extra.begin(), extra.end());
}

void relink(Chain& chain, uint32_t from_height)
{
    for (size_t h = from_height; h < chain.blocks.size(); ++h) {
        if (h > 0) chain.blocks[h].header.prev_hash = chain.blocks[h - 1].hash();
    }
}

} // namespace

ForgeryOutcome run_forgery(const Chain& honest, const ChainConfig& cfg,
                           uint32_t tamper_height, ForgeryStrategy strategy,
                           uint64_t variant)
{
    if (tamper_height == 0 || tamper_height >= honest.blocks.size())
        throw std::invalid_argument("tamper height outside the chain body");

    ForgeryOutcome out;
    out.strategy = strategy;
    out.tamper_height = tamper_height;
    out.forged = honest;

    Chain& forged = out.forged;
    Block& victim = forged.blocks[tamper_height];
    edit_block_payload(victim, variant);

    switch (strategy) {
    case ForgeryStrategy::NoRework:
        break;

    case ForgeryStrategy::ReworkNoPow:
        victim.header.merkle_root = victim.compute_merkle_root().value();
        break;

    case ForgeryStrategy::FullRemine: {
        if (cfg.consensus_mode != ledger::ConsensusMode::PoW)
            throw std::invalid_argument("full_remine needs proof-of-work rules");
        victim.header.merkle_root = victim.compute_merkle_root().value();
        for (size_t h = tamper_height; h < forged.blocks.size(); ++h) {
            Block& b = forged.blocks[h];
            b.header.prev_hash = forged.blocks[h - 1].hash();
            b.header.bits = consensus::expected_bits(
                forged.blocks, static_cast<uint32_t>(h), cfg);
            consensus::MineResult mined = consensus::pow_mine(b.header);
            if (!mined.found) throw std::runtime_error("remine failed");
            b.header = mined.header;
        }
        break;
    }

    case ForgeryStrategy::RrWithoutKeys: {
        if (cfg.consensus_mode != ledger::ConsensusMode::RoundRobin)
            throw std::invalid_argument("rr_without_keys needs rotating-writer rules");
        victim.header.merkle_root = victim.compute_merkle_root().value();
        ledger::Writer seed;
        seed.put_string("forger");
        seed.put_u64(variant);
        const consensus::KeyPair forger =
            consensus::keygen(ledger::sha256(seed.take()));
        // Even variants impersonate the scheduled writer; odd ones sign
        // under the forger's own name. Neither key is in the registry.
        const bool impersonate = variant % 2 == 0;
        relink(forged, tamper_height);
        for (size_t h = tamper_height; h < forged.blocks.size(); ++h) {
            Block& b = forged.blocks[h];
            ledger::BlockSigner signer;
            signer.node = impersonate && b.signer ? b.signer->node : "mallory";
            const ledger::Digest32 hash = b.hash();
            signer.signature = consensus::sign(
                forger.secret_key, std::span(hash.bytes.data(), hash.bytes.size()));
            b.signer = signer;
        }
        break;
    }
    }

    out.audit = ledger::locate_tamper(forged, cfg);
    out.internally_valid = !out.audit.tampered;
    out.cross = ledger::cross_check(forged, honest.tip_height(),
                                    honest.blocks.back().hash());
    out.caught = out.audit.tampered || out.cross != ledger::CrossCheckResult::Match;
    return out;
}

} // namespace hldg::netsim
