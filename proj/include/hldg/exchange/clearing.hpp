// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hldg/consensus/keys.hpp"
#include "hldg/exchange/settle.hpp"
#include "hldg/ledger/config.hpp"
#include "hldg/ledger/tx.hpp"

namespace hldg::exchange {

/// Booked form of a matched trade: a TradeRecord transaction carrying the
/// trade in its payload, signed by the matcher that posted it.
ledger::Transaction make_trade_record(const consensus::KeyPair& matcher,
                                      uint64_t seq, const Trade& trade);
std::optional<Trade> parse_trade_record(const ledger::Transaction& tx);

/// Booked form of a net settlement transfer, signed by the clearing node
/// that computed it. The net debtor rides in the payload; the transaction's
/// own to/asset/amount mirror the instruction.
ledger::Transaction make_settlement_tx(const consensus::KeyPair& clearer,
                                       uint64_t seq, const SettlementTransfer& t);
std::optional<SettlementTransfer> parse_settlement_tx(const ledger::Transaction& tx);

struct PostResult {
    bool accepted = false;
    std::string reason;
    std::vector<ledger::Transaction> txs;
};

/// Turn a matcher's trades into bookable records — but only if the poster
/// actually holds the election for this round. Anyone else is turned away,
/// which is what keeps one seat from printing the whole tape.
PostResult post_trades_to_ledger(const ledger::NodeId& poster,
                                 const ledger::NodeId& elected,
                                 const consensus::KeyPair& poster_keys,
                                 uint64_t& next_seq, std::span<const Trade> trades);

} // namespace hldg::exchange
