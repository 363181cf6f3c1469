// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/ledger/validate.hpp"

#include <map>
#include <utility>

#include "hldg/consensus/difficulty.hpp"
#include "hldg/consensus/keys.hpp"
#include "hldg/consensus/round_robin.hpp"

namespace hldg::ledger {

std::string to_string(ValidationReason r) {
    switch (r) {
        case ValidationReason::None: return "none";
        case ValidationReason::BadPrevHash: return "bad-prev-hash";
        case ValidationReason::BadMerkle: return "bad-merkle";
        case ValidationReason::BadPow: return "bad-pow";
        case ValidationReason::BadSigner: return "bad-signer";
        case ValidationReason::BadSignature: return "bad-signature";
        case ValidationReason::Conflict: return "conflict";
        case ValidationReason::Malformed: return "malformed";
    }
    return "unknown";
}

std::string to_string(CrossCheckResult r) {
    switch (r) {
        case CrossCheckResult::Match: return "match";
        case CrossCheckResult::Mismatch: return "mismatch";
        case CrossCheckResult::HeightUnknown: return "height-unknown";
    }
    return "unknown";
}

bool verify_tx_signature(const Transaction& tx) {
    if (!tx.is_signed_kind()) return true;
    if (tx.sender_pubkey.size() != consensus::kPublicKeyLen) return false;
    // The stated sender must be the hash of the signing key, or anyone
    // could spend from any account with their own key.
    if (consensus::address_of(tx.sender_pubkey) != tx.from) return false;
    const Bytes msg = tx.signing_bytes();
    return consensus::verify(tx.sender_pubkey, std::span(msg.data(), msg.size()),
                             tx.signature);
}

ValidationReport validate_block(const Block& block, const ConsensusContext& ctx) {
    const uint32_t h = ctx.height;
    const ChainConfig& cfg = *ctx.cfg;

    // 1. Link.
    if (block.header.prev_hash != ctx.prev_hash)
        return ValidationReport::bad(h, ValidationReason::BadPrevHash,
                                     "previous-hash link broken");

    // 2. Body commitment.
    const auto root = block.compute_merkle_root();
    if (!root)
        return ValidationReport::bad(h, ValidationReason::Malformed,
                                     "block carries no transactions");
    if (*root != block.header.merkle_root)
        return ValidationReport::bad(h, ValidationReason::BadMerkle,
                                     "merkle root does not match body");

    // 3. Consensus proof.
    if (cfg.consensus_mode == ConsensusMode::PoW) {
        if (block.header.bits != ctx.expected_bits)
            return ValidationReport::bad(h, ValidationReason::BadPow,
                                         "difficulty departs from schedule");
        if (!consensus::check_pow(block.header))
            return ValidationReport::bad(h, ValidationReason::BadPow,
                                         "hash not below target");
    } else {
        if (!ctx.scheduled_signer)
            return ValidationReport::bad(h, ValidationReason::BadSigner,
                                         "no writer scheduled for this height");
        if (!block.signer)
            return ValidationReport::bad(h, ValidationReason::BadSigner,
                                         "block is unsigned");
        if (block.signer->node != *ctx.scheduled_signer)
            return ValidationReport::bad(h, ValidationReason::BadSigner,
                                         "slot belongs to " + *ctx.scheduled_signer);
        if (!consensus::verify_block_signature(block, cfg))
            return ValidationReport::bad(h, ValidationReason::BadSignature,
                                         "writer signature does not verify");
    }

    // 4. Structure.
    if (block.header.timestamp < ctx.prev_timestamp)
        return ValidationReport::bad(h, ValidationReason::Malformed,
                                     "timestamp runs backwards");
    for (const auto& tx : block.txs) {
        if (tx.kind == TxKind::Ruleset || tx.kind == TxKind::Issuance)
            return ValidationReport::bad(h, ValidationReason::Malformed,
                                         "ruleset/issuance outside genesis");
    }

    // 5. Transaction signatures.
    for (const auto& tx : block.txs) {
        if (!verify_tx_signature(tx))
            return ValidationReport::bad(h, ValidationReason::BadSignature,
                                         "transaction signature does not verify");
    }

    return ValidationReport::ok();
}

namespace {

ValidationReport validate_genesis(const Chain& chain, const ChainConfig& cfg,
                                  bool require_exact_ruleset) {
    const auto bad = [](std::string why) {
        return ValidationReport::bad(0, ValidationReason::Malformed, std::move(why));
    };
    if (chain.blocks.empty()) return bad("chain is empty");
    const Block& g = chain.blocks[0];
    if (!g.header.prev_hash.is_zero()) return bad("genesis links to a predecessor");
    if (g.txs.empty() || g.txs[0].kind != TxKind::Ruleset)
        return bad("genesis does not open with a ruleset");
    if (require_exact_ruleset && g.txs[0].payload != cfg.canonical_bytes())
        return bad("genesis carries a foreign ruleset");
    // The whole genesis block is a function of the ruleset; rebuilding it
    // pins header and issuances alike.
    if (g.hash() != make_genesis(cfg).hash())
        return bad("genesis does not match its ruleset");
    return ValidationReport::ok();
}

ValidationReport validate_with(const Chain& chain, const ChainConfig& cfg,
                               bool require_exact_ruleset) {
    if (auto err = cfg.check())
        return ValidationReport::bad(0, ValidationReason::Malformed, *err);
    if (auto rep = validate_genesis(chain, cfg, require_exact_ruleset); !rep.valid)
        return rep;

    // (sender, seq) -> payload hash of the first spend seen.
    std::map<std::pair<Address, uint64_t>, Digest32> spends;
    std::map<Digest32, uint32_t> seen_ids;
    for (const auto& tx : chain.blocks[0].txs) seen_ids[tx.id()] = 0;

    for (uint32_t h = 1; h < chain.blocks.size(); ++h) {
        const Block& prev = chain.blocks[h - 1];
        const Block& b = chain.blocks[h];

        ConsensusContext ctx;
        ctx.cfg = &cfg;
        ctx.height = h;
        ctx.prev_hash = prev.hash();
        ctx.prev_timestamp = prev.header.timestamp;
        if (cfg.consensus_mode == ConsensusMode::PoW)
            ctx.expected_bits = consensus::expected_bits(chain.blocks, h, cfg);
        else
            ctx.scheduled_signer = consensus::scheduled_signer(chain, h, cfg);

        if (auto rep = validate_block(b, ctx); !rep.valid) return rep;

        for (const auto& tx : b.txs) {
            if (!seen_ids.emplace(tx.id(), h).second)
                return ValidationReport::bad(h, ValidationReason::Conflict,
                                             "transaction booked twice");
            if (tx.kind != TxKind::Transfer) continue;
            const auto key = std::make_pair(tx.from, tx.seq);
            const auto [it, fresh] = spends.emplace(key, tx.payload_hash());
            if (!fresh && it->second != tx.payload_hash())
                return ValidationReport::bad(h, ValidationReason::Conflict,
                                             "sequence spent twice");
        }
    }
    return ValidationReport::ok();
}

} // namespace

ValidationReport validate_chain(const Chain& chain, const ChainConfig& cfg) {
    return validate_with(chain, cfg, /*require_exact_ruleset=*/true);
}

ValidationReport validate_chain(const Chain& chain) {
    if (chain.blocks.empty())
        return ValidationReport::bad(0, ValidationReason::Malformed, "chain is empty");
    auto cfg = genesis_config(chain.blocks[0]);
    if (!cfg)
        return ValidationReport::bad(0, ValidationReason::Malformed,
                                     "genesis ruleset unreadable");
    return validate_with(chain, *cfg, /*require_exact_ruleset=*/false);
}

namespace {

TamperReport tamper_from(const ValidationReport& rep, const Chain& chain) {
    TamperReport t;
    if (rep.valid) return t;
    t.tampered = true;
    t.height = rep.first_invalid_height;
    t.reason = rep.reason;
    t.detail = rep.detail;
    const uint32_t tip = chain.blocks.empty()
                             ? 0
                             : static_cast<uint32_t>(chain.blocks.size()) - 1;
    t.invalidated = tip >= t.height ? tip - t.height + 1 : 0;
    return t;
}

} // namespace

TamperReport locate_tamper(const Chain& chain, const ChainConfig& cfg) {
    return tamper_from(validate_chain(chain, cfg), chain);
}

TamperReport locate_tamper(const Chain& chain) {
    return tamper_from(validate_chain(chain), chain);
}

CrossCheckResult cross_check(const Chain& chain, uint32_t height,
                             const Digest32& digest) {
    if (height >= chain.blocks.size()) return CrossCheckResult::HeightUnknown;
    return chain.blocks[height].hash() == digest ? CrossCheckResult::Match
                                                 : CrossCheckResult::Mismatch;
}

} // namespace hldg::ledger
