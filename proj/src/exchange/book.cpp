// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/exchange/book.hpp"

#include <algorithm>

namespace hldg::exchange {

namespace {

Trade fill(const RestingOrder& resting, const Order& taker, uint64_t qty,
           uint32_t day, uint64_t seq) {
    Trade t;
    t.seq = seq;
    t.security = taker.security;
    t.qty = qty;
    t.price = resting.order.price; // the maker sets the price
    t.trade_day = day;
    if (taker.side == Side::Buy) {
        t.buy_order = taker.id();
        t.sell_order = resting.order.id();
        t.buyer = taker.trader;
        t.seller = resting.order.trader;
    } else {
        t.buy_order = resting.order.id();
        t.sell_order = taker.id();
        t.buyer = resting.order.trader;
        t.seller = taker.trader;
    }
    return t;
}

} // namespace

std::vector<Trade> OrderBook::add(const Order& o, uint64_t arrival, uint32_t day,
                                  uint64_t& next_trade_seq) {
    std::vector<Trade> trades;
    uint64_t remaining = o.qty;
    auto& opposite = o.side == Side::Buy ? asks_ : bids_;

    const auto crosses = [&](const RestingOrder& r) {
        return o.side == Side::Buy ? o.price >= r.order.price
                                   : r.order.price >= o.price;
    };

    while (remaining > 0 && !opposite.empty() && crosses(opposite.front())) {
        RestingOrder& best = opposite.front();
        const uint64_t qty = std::min(remaining, best.remaining);
        trades.push_back(fill(best, o, qty, day, next_trade_seq++));
        remaining -= qty;
        best.remaining -= qty;
        if (best.remaining == 0) opposite.pop_front();
    }

    if (remaining > 0) rest(o, remaining, arrival);
    return trades;
}

void OrderBook::rest(const Order& o, uint64_t remaining, uint64_t arrival) {
    RestingOrder r{o, remaining, arrival};
    auto& side = o.side == Side::Buy ? bids_ : asks_;
    // Insert behind every order with equal or better priority: better price
    // first, then earlier arrival.
    const auto better_or_equal = [&](const RestingOrder& a) {
        if (a.order.price != r.order.price)
            return o.side == Side::Buy ? a.order.price > r.order.price
                                       : a.order.price < r.order.price;
        return a.arrival <= r.arrival;
    };
    auto it = side.begin();
    while (it != side.end() && better_or_equal(*it)) ++it;
    side.insert(it, std::move(r));
}

} // namespace hldg::exchange
