// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hldg/ledger/tx.hpp"

namespace hldg::ledger {

using NodeId = std::string;

enum class ConsensusMode : uint8_t { PoW = 0, RoundRobin = 1 };
enum class PermissionMode : uint8_t { Public = 0, Private = 1, Hybrid = 2 };
enum class SettlementMode : uint8_t { Instant = 0, Cycle = 1 };

/// What happens to an insolvent participant's obligations at cycle
/// settlement: carried to the next day, or cancelled and reported.
enum class FailurePolicy : uint8_t { Carry = 0, Cancel = 1 };

struct ValidatorEntry {
    NodeId id;
    Bytes pubkey;   // signature public key
    uint64_t stake = 0;

    bool operator==(const ValidatorEntry&) const = default;
};

struct GenesisIssuance {
    Address to{};
    Asset asset;
    uint64_t amount = 0;

    bool operator==(const GenesisIssuance&) const = default;
};

/// The genesis ruleset. Its canonical encoding is embedded in genesis tx 0,
/// so a chain file is self-describing; sha256 of that encoding is the
/// chain's ruleset commitment.
///
/// All times are in ticks: the unit header timestamps are expressed in.
/// Production configs use seconds; simulation configs use milliseconds.
struct ChainConfig {
    ConsensusMode consensus_mode = ConsensusMode::PoW;
    PermissionMode permission_mode = PermissionMode::Public;
    std::vector<NodeId> write_set;
    bool read_open = true;
    SettlementMode settlement_mode = SettlementMode::Instant;
    uint32_t cycle_days = 0;             // N of Cycle(N); 0..3
    FailurePolicy failure_policy = FailurePolicy::Carry;
    uint32_t target_interval = 600;      // expected inter-block time, ticks
    uint32_t retarget_window = 2016;     // blocks per difficulty window
    uint32_t max_retarget_factor = 4;    // clamp on a single retarget step
    uint32_t initial_bits = 0x207fffff;  // compact difficulty of epoch one
    uint32_t epoch_length = 16;          // blocks per round-robin epoch
    uint8_t sig_scheme = 1;              // SigScheme identifier
    uint32_t genesis_timestamp = 0;
    std::vector<ValidatorEntry> validators;
    std::vector<GenesisIssuance> genesis_issuances;

    bool operator==(const ChainConfig&) const = default;

    Bytes canonical_bytes() const;
    static ChainConfig from_canonical(Reader& r);
    static std::optional<ChainConfig> from_canonical(std::span<const uint8_t> data);

    /// nullopt when valid, otherwise the first broken rule.
    std::optional<std::string> check() const;

    const ValidatorEntry* find_validator(const NodeId& id) const;
    bool may_write(const NodeId& id) const;
    std::map<NodeId, uint64_t> stake_table() const;

    std::string to_json() const;
    /// Parses the JSON form; `error` receives the reason on failure.
    static std::optional<ChainConfig> from_json(const std::string& text, std::string* error);
};

} // namespace hldg::ledger
