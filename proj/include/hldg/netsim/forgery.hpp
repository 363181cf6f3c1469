// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hldg/consensus/keys.hpp"
#include "hldg/ledger/chain.hpp"
#include "hldg/ledger/config.hpp"
#include "hldg/ledger/validate.hpp"

namespace hldg::netsim {

/// How much effort the forger spends after editing a historical record.
enum class ForgeryStrategy : uint8_t {
    NoRework = 0,      // edit the transaction and nothing else
    ReworkNoPow = 1,   // recompute the merkle root but keep the old nonce
    FullRemine = 2,    // re-mine the edited block and every successor
    RrWithoutKeys = 3, // re-sign the suffix without the registered keys
};

std::string to_string(ForgeryStrategy s);
std::optional<ForgeryStrategy> forgery_strategy_from_string(const std::string& name);

struct ForgeryOutcome {
    ForgeryStrategy strategy;
    uint32_t tamper_height = 0;
    ledger::Chain forged;             // what the forger publishes
    ledger::TamperReport audit;       // a full audit of the forged chain
    ledger::CrossCheckResult cross;   // forged tip vs the recorded honest tip
    bool internally_valid = false;    // audit found nothing wrong
    bool caught = false;              // audit or cross-check flagged it
};

/// Edits the marker payload in the block at tamper_height (mixing in variant
/// so repeated trials differ), applies the given rework strategy, then audits
/// the result and cross-checks it against the honest tip. FullRemine needs
/// proof-of-work rules; RrWithoutKeys needs rotating-writer rules.
ForgeryOutcome run_forgery(const ledger::Chain& honest,
                           const ledger::ChainConfig& cfg,
                           uint32_t tamper_height,
                           ForgeryStrategy strategy,
                           uint64_t variant = 0);

} // namespace hldg::netsim
