// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/ledger/chain.hpp"

#include <cstring>
#include <fstream>

namespace hldg::ledger {

const std::array<uint8_t, 4> kChainFileMagic = {'H', 'L', 'D', 'G'};

Bytes Chain::encode() const {
    Writer w;
    w.put_raw(kChainFileMagic);
    w.put_u32(kChainFileVersion);
    w.put_u32(static_cast<uint32_t>(blocks.size()));
    for (const auto& b : blocks) b.encode_to(w);
    return w.take();
}

std::optional<Chain> Chain::decode(std::span<const uint8_t> data) {
    try {
        Reader r(data);
        std::array<uint8_t, 4> magic;
        r.get_raw(magic.data(), magic.size());
        if (magic != kChainFileMagic) return std::nullopt;
        if (r.get_u32() != kChainFileVersion) return std::nullopt;
        uint32_t n = r.get_u32();
        Chain c;
        c.blocks.reserve(n);
        for (uint32_t i = 0; i < n; ++i) c.blocks.push_back(Block::decode(r));
        if (!r.at_end()) return std::nullopt;
        return c;
    } catch (const CodecError&) {
        return std::nullopt;
    }
}

bool Chain::save(const std::filesystem::path& path, std::string* error) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        if (error) *error = "cannot open " + path.string() + " for writing";
        return false;
    }
    Bytes raw = encode();
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) {
        if (error) *error = "write to " + path.string() + " failed";
        return false;
    }
    return true;
}

std::optional<Chain> Chain::load(const std::filesystem::path& path, std::string* error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (error) *error = "cannot open " + path.string();
        return std::nullopt;
    }
    Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto chain = decode(raw);
    if (!chain && error) *error = "malformed chain file " + path.string();
    return chain;
}

} // namespace hldg::ledger
