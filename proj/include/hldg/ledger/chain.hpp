// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hldg/ledger/block.hpp"

namespace hldg::ledger {

constexpr uint32_t kChainFileVersion = 1;
extern const std::array<uint8_t, 4> kChainFileMagic; // "HLDG"

/// Hash-linked block sequence starting at genesis (height 0).
struct Chain {
    std::vector<Block> blocks;

    bool operator==(const Chain&) const = default;

    uint32_t height() const { return static_cast<uint32_t>(blocks.size()); }
    uint32_t tip_height() const { return height() - 1; }
    bool empty() const { return blocks.empty(); }
    const Block& tip() const { return blocks.back(); }
    Digest32 tip_hash() const { return blocks.back().hash(); }

    Bytes encode() const;
    static std::optional<Chain> decode(std::span<const uint8_t> data);

    bool save(const std::filesystem::path& path, std::string* error = nullptr) const;
    static std::optional<Chain> load(const std::filesystem::path& path,
                                     std::string* error = nullptr);
};

} // namespace hldg::ledger
