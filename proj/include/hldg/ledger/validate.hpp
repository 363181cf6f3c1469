// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <optional>
#include <string>

#include "hldg/ledger/chain.hpp"
#include "hldg/ledger/config.hpp"

namespace hldg::ledger {

enum class ValidationReason : uint8_t {
    None = 0,
    BadPrevHash,   // link to predecessor broken
    BadMerkle,     // body does not match header commitment
    BadPow,        // wrong difficulty or hash not under target
    BadSigner,     // block signed by a writer outside its slot
    BadSignature,  // claimed signer's signature does not verify
    Conflict,      // same sequence spent twice with different payloads
    Malformed,     // structural rule broken
};

std::string to_string(ValidationReason r);

struct ValidationReport {
    bool valid = true;
    uint32_t first_invalid_height = 0;
    ValidationReason reason = ValidationReason::None;
    std::string detail;

    static ValidationReport ok() { return {}; }
    static ValidationReport bad(uint32_t height, ValidationReason why,
                                std::string detail) {
        return {false, height, why, std::move(detail)};
    }
};

/// Everything block validation needs from the chain context at one height.
struct ConsensusContext {
    const ChainConfig* cfg = nullptr;
    uint32_t height = 0;
    Digest32 prev_hash{};
    uint32_t prev_timestamp = 0;
    uint32_t expected_bits = 0;              // PoW mode
    std::optional<NodeId> scheduled_signer;  // rotation mode
};

/// Signed transaction kinds must carry a verifying signature from the key
/// whose hash is the stated sender; unsigned kinds pass vacuously.
bool verify_tx_signature(const Transaction& tx);

/// Check one non-genesis block against its context. Checks run in a fixed
/// order (link, body commitment, consensus proof, structure, transaction
/// signatures) so a given corruption always maps to the same reason.
ValidationReport validate_block(const Block& block, const ConsensusContext& ctx);

/// Full-chain audit against an explicit ruleset: genesis must embed exactly
/// this ruleset, every link/proof/signature must hold, and no sequence
/// number may be spent twice with different payloads.
ValidationReport validate_chain(const Chain& chain, const ChainConfig& cfg);

/// Self-describing audit: the ruleset is read out of genesis tx 0.
ValidationReport validate_chain(const Chain& chain);

struct TamperReport {
    bool tampered = false;
    uint32_t height = 0;        // first height failing validation
    uint32_t invalidated = 0;   // blocks from there to the tip, inclusive
    ValidationReason reason = ValidationReason::None;
    std::string detail;
};

/// Audit a chain and, when it fails, report where and how much of the chain
/// the break invalidates.
TamperReport locate_tamper(const Chain& chain, const ChainConfig& cfg);
TamperReport locate_tamper(const Chain& chain);

enum class CrossCheckResult : uint8_t { Match = 0, Mismatch = 1, HeightUnknown = 2 };

std::string to_string(CrossCheckResult r);

/// Compare a counterparty's recorded block digest at `height` against this
/// chain. An internally consistent rewrite still diverges here, which is
/// what makes independent copies worth keeping.
CrossCheckResult cross_check(const Chain& chain, uint32_t height,
                             const Digest32& digest);

} // namespace hldg::ledger
