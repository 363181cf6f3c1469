// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "hldg/exchange/order.hpp"

namespace hldg::exchange {

/// An order resting on the book with its unfilled remainder.
struct RestingOrder {
    Order order;
    uint64_t remaining = 0;
    uint64_t arrival = 0; // venue-wide arrival stamp; breaks price ties
};

/// Price-time priority book for one security. An incoming order matches the
/// best-priced opposite resting order first (ties to the earlier arrival),
/// trades at the resting price, and any remainder joins the book.
class OrderBook {
public:
    explicit OrderBook(std::string security) : security_(std::move(security)) {}

    /// Match `o` against the book; returns the trades in execution order.
    /// Trade seqs are assigned from `next_trade_seq` (incremented).
    std::vector<Trade> add(const Order& o, uint64_t arrival, uint32_t day,
                           uint64_t& next_trade_seq);

    const std::deque<RestingOrder>& bids() const { return bids_; }
    const std::deque<RestingOrder>& asks() const { return asks_; }
    const std::string& security() const { return security_; }

private:
    void rest(const Order& o, uint64_t remaining, uint64_t arrival);

    std::string security_;
    std::deque<RestingOrder> bids_; // price desc, arrival asc
    std::deque<RestingOrder> asks_; // price asc, arrival asc
};

} // namespace hldg::exchange
