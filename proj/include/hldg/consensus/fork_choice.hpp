// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "hldg/consensus/difficulty.hpp"
#include "hldg/ledger/chain.hpp"

namespace hldg::consensus {

/// Total proof-of-work across a chain's headers. 512-bit so even absurdly
/// long max-work chains cannot wrap.
uint512 chain_work(const ledger::Chain& chain);

/// Index of the chain a node should adopt: maximal cumulative work, with
/// ties kept by the earliest (first-seen) candidate. Empty input -> nullopt.
std::optional<size_t> fork_choice(std::span<const ledger::Chain> candidates);

} // namespace hldg::consensus
