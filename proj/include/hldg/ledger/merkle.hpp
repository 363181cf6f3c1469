// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hldg/ledger/sha256.hpp"

namespace hldg::ledger {

/// Root committing an ordered list of leaf digests. Interior nodes are
/// sha256(left || right); a level with an odd node count duplicates its
/// last node. A single leaf is its own root. Empty input is rejected.
std::optional<Digest32> merkle_root(std::span<const Digest32> leaf_ids);

} // namespace hldg::ledger
