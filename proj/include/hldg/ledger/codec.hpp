// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hldg/ledger/sha256.hpp"

namespace hldg::ledger {

/// Thrown on truncated or malformed canonical encodings.
struct CodecError : std::runtime_error {
    explicit CodecError(const std::string& what) : std::runtime_error(what) {}
};

/// Canonical encoding: fixed-width little-endian integers, digests raw,
/// variable-length fields with a 4-byte length prefix.
class Writer {
public:
    void put_u8(uint8_t v) { out_.push_back(v); }
    void put_u32(uint32_t v);
    void put_u64(uint64_t v);
    void put_raw(std::span<const uint8_t> data);
    void put_digest(const Digest32& d) { put_raw(d.bytes); }
    void put_var_bytes(std::span<const uint8_t> data);
    void put_string(std::string_view s);

    const Bytes& bytes() const { return out_; }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

class Reader {
public:
    explicit Reader(std::span<const uint8_t> data) : data_(data) {}

    uint8_t get_u8();
    uint32_t get_u32();
    uint64_t get_u64();
    void get_raw(uint8_t* out, size_t len);
    Digest32 get_digest();
    Bytes get_var_bytes();
    std::string get_string();

    size_t remaining() const { return data_.size() - pos_; }
    bool at_end() const { return pos_ == data_.size(); }

private:
    void need(size_t n) const {
        if (data_.size() - pos_ < n) throw CodecError("truncated input");
    }

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

} // namespace hldg::ledger
