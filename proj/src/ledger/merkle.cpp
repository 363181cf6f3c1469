// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/ledger/merkle.hpp"

namespace hldg::ledger {

static Digest32 parent(const Digest32& left, const Digest32& right) {
    Sha256 h;
    h.update(left.bytes);
    h.update(right.bytes);
    return h.finish();
}

std::optional<Digest32> merkle_root(std::span<const Digest32> leaf_ids) {
    if (leaf_ids.empty()) return std::nullopt;

    std::vector<Digest32> level(leaf_ids.begin(), leaf_ids.end());
    while (level.size() > 1) {
        std::vector<Digest32> next;
        next.reserve((level.size() + 1) / 2);
        for (size_t i = 0; i < level.size(); i += 2) {
            const Digest32& left = level[i];
            const Digest32& right = (i + 1 < level.size()) ? level[i + 1] : level[i];
            next.push_back(parent(left, right));
        }
        level = std::move(next);
    }
    return level[0];
}

} // namespace hldg::ledger
