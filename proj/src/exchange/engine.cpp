// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/exchange/engine.hpp"

#include <limits>
#include <stdexcept>

#include "hldg/ledger/validate.hpp"

namespace hldg::exchange {

void ExchangeEngine::credit(const Address& to, const Asset& asset, uint64_t amount) {
    accounts_[to].adjust(asset, static_cast<int64_t>(amount));
}

OrderBook& ExchangeEngine::book(const std::string& security) {
    auto it = books_.find(security);
    if (it == books_.end())
        it = books_.emplace(security, OrderBook(security)).first;
    return it->second;
}

ExchangeEngine::SubmitResult ExchangeEngine::submit_order(const Order& o) {
    if (o.qty == 0) return reject("zero quantity");
    if (o.price == 0) return reject("zero price");
    if (o.security.empty()) return reject("no security named");
    if (o.price > 0 &&
        o.qty > static_cast<uint64_t>(std::numeric_limits<int64_t>::max()) / o.price)
        return reject("notional overflows");
    if (!verify_order_signature(o)) return reject("bad signature");

    // Sequence slots are single-use: a different order under a used slot is
    // the order-book double spend, an identical one a harmless retransmit.
    const auto slot = std::make_pair(o.trader, o.seq);
    const Digest32 id = o.id();
    if (const auto it = order_slots_.find(slot); it != order_slots_.end())
        return reject(it->second == id ? "duplicate order" : "sequence conflict");

    TraderAccount& acct = accounts_[o.trader];
    const int64_t qty = static_cast<int64_t>(o.qty);
    const int64_t notional = static_cast<int64_t>(o.qty * o.price);
    if (mode_ == ledger::SettlementMode::Instant) {
        // Full cover up front, against balance not yet promised elsewhere.
        if (o.side == Side::Buy) {
            if (acct.available_cash() < notional) return reject("insufficient cash");
            acct.reserved_cash += notional;
        } else {
            if (acct.available_holding(o.security) < qty)
                return reject("insufficient holdings");
            acct.reserved_holdings[o.security] += qty;
        }
    }
    order_slots_.emplace(slot, id);

    SubmitResult result;
    result.accepted = true;
    result.trades = book(o.security).add(o, next_arrival_++, day_, next_trade_seq_);

    for (const Trade& t : result.trades) {
        if (mode_ == ledger::SettlementMode::Instant) {
            // Unlock exactly what was reserved for the filled quantity. A
            // taker buy reserved at its own limit (which may exceed the
            // resting price); a resting buy trades at its limit, so there
            // t.price is the reserved rate.
            const uint64_t buyer_limit = o.side == Side::Buy ? o.price : t.price;
            accounts_[t.buyer].reserved_cash -=
                static_cast<int64_t>(t.qty * buyer_limit);
            accounts_[t.seller].reserved_holdings[t.security] -=
                static_cast<int64_t>(t.qty);
            if (!settle_instant(accounts_, t))
                throw std::logic_error("gated order failed instant settlement");
        } else {
            for (auto& leg : trade_obligations(t, cycle_days_))
                pending_.push_back(std::move(leg));
        }
        trades_.push_back(t);
    }
    return result;
}

ExchangeEngine::TransferResult ExchangeEngine::submit_transfer(
    const ledger::Transaction& tx) {
    if (tx.kind != ledger::TxKind::Transfer) return {false, "not a transfer"};
    if (tx.amount == 0) return {false, "zero amount"};
    if (tx.amount > static_cast<uint64_t>(std::numeric_limits<int64_t>::max()))
        return {false, "amount overflows"};
    if (!ledger::verify_tx_signature(tx)) return {false, "bad signature"};

    const auto slot = std::make_pair(tx.from, tx.seq);
    const Digest32 ph = tx.payload_hash();
    if (const auto it = transfer_slots_.find(slot); it != transfer_slots_.end())
        return {false, it->second == ph ? "duplicate transfer" : "sequence conflict"};

    TraderAccount& from = accounts_[tx.from];
    const int64_t amount = static_cast<int64_t>(tx.amount);
    const bool covered = tx.asset.kind == ledger::AssetKind::Cash
                             ? from.available_cash() >= amount
                             : from.available_holding(tx.asset.symbol) >= amount;
    if (!covered) return {false, "insufficient balance"};

    transfer_slots_.emplace(slot, ph);
    from.adjust(tx.asset, -amount);
    accounts_[tx.to].adjust(tx.asset, amount);
    return {true, ""};
}

DayResult ExchangeEngine::advance_day() {
    ++day_;
    if (mode_ == ledger::SettlementMode::Cycle)
        return settle_cycle(accounts_, pending_, day_, policy_);
    DayResult r;
    r.day = day_;
    return r;
}

} // namespace hldg::exchange
