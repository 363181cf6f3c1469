// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hldg/ledger/tx.hpp"

namespace hldg::exchange {

using ledger::Address;
using ledger::Asset;

/// Positions plus amounts locked behind resting orders. Reservations are an
/// up-front admission control: in instant settlement they make negative
/// balances impossible by construction rather than by detection.
struct TraderAccount {
    int64_t cash = 0;
    std::map<std::string, int64_t> holdings; // security symbol -> quantity
    int64_t reserved_cash = 0;
    std::map<std::string, int64_t> reserved_holdings;
    uint64_t next_order_seq = 0;

    int64_t holding(const std::string& sym) const {
        const auto it = holdings.find(sym);
        return it == holdings.end() ? 0 : it->second;
    }
    int64_t reserved_holding(const std::string& sym) const {
        const auto it = reserved_holdings.find(sym);
        return it == reserved_holdings.end() ? 0 : it->second;
    }
    int64_t available_cash() const { return cash - reserved_cash; }
    int64_t available_holding(const std::string& sym) const {
        return holding(sym) - reserved_holding(sym);
    }

    int64_t position(const Asset& a) const {
        return a.kind == ledger::AssetKind::Cash ? cash : holding(a.symbol);
    }
    void adjust(const Asset& a, int64_t delta) {
        if (a.kind == ledger::AssetKind::Cash)
            cash += delta;
        else
            holdings[a.symbol] += delta;
    }
};

using Accounts = std::map<Address, TraderAccount>;

/// Sum of every account's position in one asset; trading and settlement
/// must never change it.
inline int64_t total_position(const Accounts& accounts, const Asset& a) {
    int64_t total = 0;
    for (const auto& [addr, acct] : accounts) total += acct.position(a);
    return total;
}

inline bool any_negative(const Accounts& accounts) {
    for (const auto& [addr, acct] : accounts) {
        if (acct.cash < 0) return true;
        for (const auto& [sym, qty] : acct.holdings)
            if (qty < 0) return true;
    }
    return false;
}

} // namespace hldg::exchange
