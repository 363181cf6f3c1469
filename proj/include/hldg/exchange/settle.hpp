// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <vector>

#include "hldg/exchange/account.hpp"
#include "hldg/exchange/order.hpp"
#include "hldg/ledger/config.hpp"

namespace hldg::exchange {

/// Settle one trade delivery-versus-payment: both legs or neither. Returns
/// false (touching nothing) when the buyer lacks cash or the seller lacks
/// the securities.
bool settle_instant(Accounts& accounts, const Trade& trade);

/// One leg of a trade awaiting its settlement day.
struct Obligation {
    uint64_t trade_seq = 0; // pairs the cash leg with the security leg
    Address from{};
    Address to{};
    Asset asset;
    uint64_t amount = 0;
    uint32_t due_day = 0;

    bool operator==(const Obligation&) const = default;
};

/// Both legs of a trade due `cycle_days` after the trade day.
std::vector<Obligation> trade_obligations(const Trade& trade, uint32_t cycle_days);

/// A net transfer produced by cycle settlement.
struct SettlementTransfer {
    Address from{};
    Address to{};
    Asset asset;
    uint64_t amount = 0;

    bool operator==(const SettlementTransfer&) const = default;
};

struct DayResult {
    uint32_t day = 0;
    std::vector<SettlementTransfer> transfers;
    std::vector<uint64_t> carried;   // trade seqs deferred to the next day
    std::vector<uint64_t> cancelled; // trade seqs dropped, both legs
};

/// Settle every obligation due by `day` with multilateral netting: per
/// asset, each trader owes or receives only their net position, and net
/// debtors pay net creditors directly (smallest address first), so a chain
/// A -> B -> C of equal deliveries collapses to a single A -> C transfer.
///
/// When a trader's balance cannot cover their net debit, every due trade
/// they are paying on is pulled from the batch — both legs, keeping
/// delivery tied to payment — and either carried to the next day or
/// cancelled per `policy`; netting then recomputes, since pulling a trade
/// can strand a counterparty that was relying on the inflow. Repeats until
/// the remaining batch clears. `pending` keeps undue and carried
/// obligations.
DayResult settle_cycle(Accounts& accounts, std::vector<Obligation>& pending,
                       uint32_t day, ledger::FailurePolicy policy);

} // namespace hldg::exchange
