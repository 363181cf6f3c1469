// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/ledger/codec.hpp"

#include <cstring>
#include <limits>

namespace hldg::ledger {

void Writer::put_u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(uint8_t(v >> (8 * i)));
}

void Writer::put_u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(uint8_t(v >> (8 * i)));
}

void Writer::put_raw(std::span<const uint8_t> data) {
    out_.insert(out_.end(), data.begin(), data.end());
}

void Writer::put_var_bytes(std::span<const uint8_t> data) {
    if (data.size() > std::numeric_limits<uint32_t>::max())
        throw CodecError("field too long");
    put_u32(static_cast<uint32_t>(data.size()));
    put_raw(data);
}

void Writer::put_string(std::string_view s) {
    put_var_bytes(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

uint8_t Reader::get_u8() {
    need(1);
    return data_[pos_++];
}

uint32_t Reader::get_u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(data_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
}

uint64_t Reader::get_u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(data_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
}

void Reader::get_raw(uint8_t* out, size_t len) {
    need(len);
    std::memcpy(out, data_.data() + pos_, len);
    pos_ += len;
}

Digest32 Reader::get_digest() {
    Digest32 d;
    get_raw(d.bytes.data(), 32);
    return d;
}

Bytes Reader::get_var_bytes() {
    uint32_t len = get_u32();
    need(len);
    Bytes out(data_.begin() + pos_, data_.begin() + pos_ + len);
    pos_ += len;
    return out;
}

std::string Reader::get_string() {
    Bytes raw = get_var_bytes();
    return std::string(raw.begin(), raw.end());
}

} // namespace hldg::ledger
