// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hldg/exchange/engine.hpp"
#include "hldg/ledger/chain.hpp"
#include "hldg/ledger/validate.hpp"
#include "hldg/netsim/attack.hpp"
#include "hldg/netsim/forgery.hpp"
#include "hldg/netsim/scenario.hpp"
#include "hldg/netsim/simrng.hpp"

namespace hldg::netsim {

struct AuditFinding {
    uint64_t at = 0;
    ledger::NodeId node;
    ledger::TamperReport report;
};

struct ForgeryTrial {
    uint32_t trial = 0;
    ForgeryStrategy strategy = ForgeryStrategy::NoRework;
    uint32_t tamper_height = 0;
    bool internally_valid = false;
    bool caught = false;
    ledger::ValidationReason reason = ledger::ValidationReason::None;
    uint32_t audit_height = 0;
    ledger::CrossCheckResult cross = ledger::CrossCheckResult::Match;
};

/// Everything a run measured. to_json() renders the canonical report: keys
/// sorted, two-space indent — byte-identical across repeat runs by design.
struct SimReport {
    std::string scenario;
    uint64_t seed = 0;
    uint64_t duration = 0;

    uint32_t final_height = 0;
    std::string tip_hash;
    bool all_agree = false;
    bool final_chain_valid = false;
    std::map<ledger::NodeId, std::string> node_tips;

    uint64_t blocks_produced = 0;
    uint64_t blocks_orphaned = 0;
    uint64_t missed_slots = 0;
    std::map<ledger::NodeId, uint64_t> produced_by;

    uint32_t target_interval = 0;
    double mean_interval = 0.0;
    std::vector<double> window_means; // realized mean per full retarget window

    bool trading = false;
    uint64_t orders_submitted = 0;
    uint64_t orders_accepted = 0;
    uint64_t orders_rejected = 0;
    uint64_t trades_executed = 0;
    uint64_t trade_records_booked = 0;
    uint64_t settlement_transfers = 0;
    uint64_t settlements_booked = 0;
    uint64_t trades_carried = 0;
    uint64_t trades_cancelled = 0;
    uint64_t obligations_pending = 0;
    bool negative_balances = false;
    bool conservation_ok = true;
    std::map<uint32_t, ledger::NodeId> matchers; // day -> elected matcher

    uint64_t tampers_applied = 0;
    std::vector<AuditFinding> audits;

    std::optional<DoubleSpendResult> double_spend;
    std::vector<ForgeryTrial> forgeries;

    std::string to_json() const;
};

/// Deterministic discrete-event run of one scenario: same file, same seed,
/// same report bytes. Ticks are the simulation clock; every random draw
/// comes from substreams of the scenario seed.
class Simulation {
public:
    explicit Simulation(Scenario scenario);

    SimReport run();

    /// Node chains after run(), in scenario node order.
    const std::vector<ledger::Chain>& chains() const { return chains_; }
    /// Index into chains() of the canonical (most-work) chain after run().
    size_t canonical_index() const { return canonical_; }

private:
    Scenario sc_;
    std::vector<ledger::Chain> chains_;
    size_t canonical_ = 0;
};

} // namespace hldg::netsim
