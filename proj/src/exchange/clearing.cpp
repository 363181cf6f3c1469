// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/exchange/clearing.hpp"

#include <algorithm>

namespace hldg::exchange {

namespace {

ledger::Transaction signed_tx(const consensus::KeyPair& kp, ledger::Transaction tx) {
    tx.from = consensus::address_of(kp.public_key);
    tx.sender_pubkey = kp.public_key;
    const ledger::Bytes msg = tx.signing_bytes();
    tx.signature = consensus::sign(kp.secret_key, std::span(msg.data(), msg.size()));
    return tx;
}

} // namespace

ledger::Transaction make_trade_record(const consensus::KeyPair& matcher,
                                      uint64_t seq, const Trade& trade) {
    ledger::Transaction tx;
    tx.kind = ledger::TxKind::TradeRecord;
    tx.asset = Asset::security(trade.security);
    tx.amount = trade.qty;
    tx.seq = seq;
    tx.payload = trade.encode();
    return signed_tx(matcher, std::move(tx));
}

std::optional<Trade> parse_trade_record(const ledger::Transaction& tx) {
    if (tx.kind != ledger::TxKind::TradeRecord) return std::nullopt;
    try {
        ledger::Reader r(tx.payload);
        Trade t = Trade::decode(r);
        if (!r.at_end()) return std::nullopt;
        return t;
    } catch (const ledger::CodecError&) {
        return std::nullopt;
    }
}

ledger::Transaction make_settlement_tx(const consensus::KeyPair& clearer,
                                       uint64_t seq, const SettlementTransfer& t) {
    ledger::Transaction tx;
    tx.kind = ledger::TxKind::Settlement;
    tx.to = t.to;
    tx.asset = t.asset;
    tx.amount = t.amount;
    tx.seq = seq;
    tx.payload.assign(t.from.bytes.begin(), t.from.bytes.end());
    return signed_tx(clearer, std::move(tx));
}

std::optional<SettlementTransfer> parse_settlement_tx(const ledger::Transaction& tx) {
    if (tx.kind != ledger::TxKind::Settlement) return std::nullopt;
    if (tx.payload.size() != 32) return std::nullopt;
    SettlementTransfer t;
    std::copy(tx.payload.begin(), tx.payload.end(), t.from.bytes.begin());
    t.to = tx.to;
    t.asset = tx.asset;
    t.amount = tx.amount;
    return t;
}

PostResult post_trades_to_ledger(const ledger::NodeId& poster,
                                 const ledger::NodeId& elected,
                                 const consensus::KeyPair& poster_keys,
                                 uint64_t& next_seq, std::span<const Trade> trades) {
    PostResult result;
    if (poster != elected) {
        result.reason = "poster is not the elected matcher (" + elected + ")";
        return result;
    }
    result.accepted = true;
    result.txs.reserve(trades.size());
    for (const Trade& t : trades)
        result.txs.push_back(make_trade_record(poster_keys, next_seq++, t));
    return result;
}

} // namespace hldg::exchange
