// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/ledger/tx.hpp"

namespace hldg::ledger {

static void encode_core(const Transaction& tx, Writer& w) {
    w.put_u8(static_cast<uint8_t>(tx.kind));
    w.put_digest(tx.from);
    w.put_digest(tx.to);
    w.put_u8(static_cast<uint8_t>(tx.asset.kind));
    w.put_string(tx.asset.symbol);
    w.put_u64(tx.amount);
    w.put_u64(tx.seq);
    w.put_var_bytes(tx.payload);
    w.put_var_bytes(tx.sender_pubkey);
}

Bytes Transaction::signing_bytes() const {
    Writer w;
    encode_core(*this, w);
    return w.take();
}

void Transaction::encode_to(Writer& w) const {
    encode_core(*this, w);
    w.put_var_bytes(signature);
}

Bytes Transaction::encode() const {
    Writer w;
    encode_to(w);
    return w.take();
}

Transaction Transaction::decode(Reader& r) {
    Transaction tx;
    uint8_t kind = r.get_u8();
    if (kind > static_cast<uint8_t>(TxKind::Marker)) throw CodecError("bad tx kind");
    tx.kind = static_cast<TxKind>(kind);
    tx.from = r.get_digest();
    tx.to = r.get_digest();
    uint8_t asset_kind = r.get_u8();
    if (asset_kind > static_cast<uint8_t>(AssetKind::Security))
        throw CodecError("bad asset kind");
    tx.asset.kind = static_cast<AssetKind>(asset_kind);
    tx.asset.symbol = r.get_string();
    tx.amount = r.get_u64();
    tx.seq = r.get_u64();
    tx.payload = r.get_var_bytes();
    tx.sender_pubkey = r.get_var_bytes();
    tx.signature = r.get_var_bytes();
    return tx;
}

Digest32 Transaction::id() const {
    return sha256(encode());
}

Digest32 Transaction::payload_hash() const {
    return sha256(signing_bytes());
}

} // namespace hldg::ledger
