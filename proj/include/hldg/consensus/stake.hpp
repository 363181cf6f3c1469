// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <optional>

#include "hldg/ledger/config.hpp"
#include "hldg/ledger/sha256.hpp"

namespace hldg::consensus {

/// Stake-weighted matcher election. The seed is stretched to a 128-bit draw
/// (first 16 bytes of sha256(seed || "pos"), big-endian) and reduced mod the
/// total stake; validators own contiguous intervals of that range in
/// lexicographic id order, so a validator's win probability is exactly
/// stake/total. Zero-stake validators can never win. Returns nullopt when no
/// stake is registered.
std::optional<ledger::NodeId> pos_elect_matcher(const ledger::Digest32& seed,
                                                const ledger::ChainConfig& cfg);

} // namespace hldg::consensus
