// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "hldg/exchange/account.hpp"
#include "hldg/exchange/book.hpp"
#include "hldg/exchange/conflict.hpp"
#include "hldg/exchange/settle.hpp"
#include "hldg/ledger/config.hpp"

namespace hldg::exchange {

/// Booking venue: signed order flow in, trades and settled positions out.
///
/// Instant mode gates at the door — an order must be fully covered by
/// unreserved balance before it can rest, so settlement can never fail and
/// no balance ever goes negative. Cycle mode admits orders on credit and
/// defers both legs to multilateral netting cycle_days later, where the
/// failure policy decides what happens to a defaulter's trades.
class ExchangeEngine {
public:
    ExchangeEngine(ledger::SettlementMode mode, uint32_t cycle_days,
                   ledger::FailurePolicy policy)
        : mode_(mode), cycle_days_(cycle_days), policy_(policy) {}

    static ExchangeEngine from_config(const ledger::ChainConfig& cfg) {
        return ExchangeEngine(cfg.settlement_mode, cfg.cycle_days, cfg.failure_policy);
    }

    /// Issue `amount` of `asset` to an account (genesis credits).
    void credit(const Address& to, const Asset& asset, uint64_t amount);

    struct SubmitResult {
        bool accepted = false;
        std::string reason;
        std::vector<Trade> trades; // fills triggered by this order
    };
    SubmitResult submit_order(const Order& o);

    struct TransferResult {
        bool accepted = false;
        std::string reason;
    };
    /// Apply a signed Transfer transaction against available balances.
    TransferResult submit_transfer(const ledger::Transaction& tx);

    /// Roll to the next day; in cycle mode this settles everything due.
    DayResult advance_day();

    uint32_t day() const { return day_; }
    const Accounts& accounts() const { return accounts_; }
    const TraderAccount& account(const Address& a) { return accounts_[a]; }
    const std::vector<Obligation>& pending() const { return pending_; }
    const std::vector<Trade>& trade_log() const { return trades_; }
    OrderBook& book(const std::string& security);

    int64_t total(const Asset& asset) const { return total_position(accounts_, asset); }
    bool any_negative_balance() const { return any_negative(accounts_); }

private:
    SubmitResult reject(std::string reason) { return {false, std::move(reason), {}}; }

    ledger::SettlementMode mode_;
    uint32_t cycle_days_;
    ledger::FailurePolicy policy_;

    Accounts accounts_;
    std::map<std::string, OrderBook> books_;
    std::vector<Obligation> pending_;
    std::vector<Trade> trades_;
    std::map<std::pair<Address, uint64_t>, Digest32> order_slots_;
    std::map<std::pair<Address, uint64_t>, Digest32> transfer_slots_;
    uint64_t next_trade_seq_ = 0;
    uint64_t next_arrival_ = 0;
    uint32_t day_ = 0;
};

} // namespace hldg::exchange
