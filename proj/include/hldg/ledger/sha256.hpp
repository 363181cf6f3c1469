// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hldg/ledger/hex.hpp"

namespace hldg::ledger {

/// 256-bit digest. Rendered as 64 lowercase hex characters everywhere.
struct Digest32 {
    std::array<uint8_t, 32> bytes{};

    auto operator<=>(const Digest32&) const = default;

    bool is_zero() const {
        for (uint8_t b : bytes)
            if (b != 0) return false;
        return true;
    }

    std::string hex() const { return to_hex(bytes); }

    static std::optional<Digest32> from_hex(std::string_view s);
};

/// FIPS 180-4 SHA-256, streaming interface.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(const uint8_t* data, size_t len);
    void update(std::span<const uint8_t> data) { update(data.data(), data.size()); }
    Digest32 finish();

private:
    void compress(const uint8_t block[64]);

    std::array<uint32_t, 8> state_;
    std::array<uint8_t, 64> buf_;
    size_t buf_len_ = 0;
    uint64_t total_len_ = 0;
};

Digest32 sha256(std::span<const uint8_t> data);
Digest32 sha256(std::string_view s);

/// sha256(sha256(data)) — block identity per the header layout.
Digest32 dsha256(std::span<const uint8_t> data);

} // namespace hldg::ledger
