// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/exchange/order.hpp"

namespace hldg::exchange {

Bytes Order::signing_bytes() const {
    ledger::Writer w;
    w.put_digest(trader);
    w.put_u8(static_cast<uint8_t>(side));
    w.put_string(security);
    w.put_u64(qty);
    w.put_u64(price);
    w.put_u64(seq);
    w.put_var_bytes(pubkey);
    return w.take();
}

Digest32 Order::id() const {
    const Bytes msg = signing_bytes();
    return ledger::sha256(std::span(msg.data(), msg.size()));
}

void Order::encode_to(ledger::Writer& w) const {
    w.put_digest(trader);
    w.put_u8(static_cast<uint8_t>(side));
    w.put_string(security);
    w.put_u64(qty);
    w.put_u64(price);
    w.put_u64(seq);
    w.put_var_bytes(pubkey);
    w.put_var_bytes(signature);
}

Bytes Order::encode() const {
    ledger::Writer w;
    encode_to(w);
    return w.take();
}

Order Order::decode(ledger::Reader& r) {
    Order o;
    o.trader = r.get_digest();
    const uint8_t side = r.get_u8();
    if (side > 1) throw ledger::CodecError("bad order side");
    o.side = static_cast<Side>(side);
    o.security = r.get_string();
    o.qty = r.get_u64();
    o.price = r.get_u64();
    o.seq = r.get_u64();
    o.pubkey = r.get_var_bytes();
    o.signature = r.get_var_bytes();
    return o;
}

Order make_order(const consensus::KeyPair& kp, Side side, const std::string& security,
                 uint64_t qty, uint64_t price, uint64_t seq) {
    Order o;
    o.trader = consensus::address_of(kp.public_key);
    o.side = side;
    o.security = security;
    o.qty = qty;
    o.price = price;
    o.seq = seq;
    o.pubkey = kp.public_key;
    const Bytes msg = o.signing_bytes();
    o.signature = consensus::sign(kp.secret_key, std::span(msg.data(), msg.size()));
    return o;
}

bool verify_order_signature(const Order& o) {
    if (o.pubkey.size() != consensus::kPublicKeyLen) return false;
    if (consensus::address_of(o.pubkey) != o.trader) return false;
    const Bytes msg = o.signing_bytes();
    return consensus::verify(o.pubkey, std::span(msg.data(), msg.size()), o.signature);
}

void Trade::encode_to(ledger::Writer& w) const {
    w.put_u64(seq);
    w.put_digest(buy_order);
    w.put_digest(sell_order);
    w.put_digest(buyer);
    w.put_digest(seller);
    w.put_string(security);
    w.put_u64(qty);
    w.put_u64(price);
    w.put_u32(trade_day);
}

Bytes Trade::encode() const {
    ledger::Writer w;
    encode_to(w);
    return w.take();
}

Trade Trade::decode(ledger::Reader& r) {
    Trade t;
    t.seq = r.get_u64();
    t.buy_order = r.get_digest();
    t.sell_order = r.get_digest();
    t.buyer = r.get_digest();
    t.seller = r.get_digest();
    t.security = r.get_string();
    t.qty = r.get_u64();
    t.price = r.get_u64();
    t.trade_day = r.get_u32();
    return t;
}

} // namespace hldg::exchange
