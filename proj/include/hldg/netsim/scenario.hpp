// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hldg/consensus/keys.hpp"
#include "hldg/ledger/config.hpp"
#include "hldg/netsim/forgery.hpp"

namespace hldg::netsim {

/// One simulated machine. Keys are derived from the node id so a scenario
/// file stays a small, editable description rather than a key vault.
struct NodeSpec {
    ledger::NodeId id;
    uint64_t stake = 0;
    bool writer = false;
    double power = 1.0; // relative share of hash power, proof-of-work only
    consensus::KeyPair keys;
};

struct TraderSpec {
    std::string id;
    consensus::KeyPair keys;
    ledger::Address address{};
    uint64_t cash = 0;
    std::map<std::string, uint64_t> holdings; // symbol -> quantity
};

/// Synthetic order flow: `orders` limit orders starting at `start`, spaced
/// `spacing` ticks apart, random side, quantity in [qty_min, qty_max] and
/// price in [mid - half_spread, mid + half_spread].
struct FlowSpec {
    uint32_t orders = 0;
    uint64_t start = 0;
    uint64_t spacing = 1;
    std::vector<std::string> securities;
    uint64_t qty_min = 1;
    uint64_t qty_max = 10;
    uint64_t mid = 50;
    uint64_t half_spread = 5;
};

/// Flip one byte inside a node's local copy at the given height, mid-run.
struct TamperEvent {
    uint64_t at = 0;
    ledger::NodeId node;
    uint32_t height = 0;
};

/// Audit every node's local copy at the given time.
struct AuditEvent {
    uint64_t at = 0;
};

struct DoubleSpendSpec {
    double q = 0.0;
    uint32_t z = 0;
    uint32_t runs = 1000;
};

struct ForgerySpec {
    uint32_t tamper_height = 0;
    ForgeryStrategy strategy = ForgeryStrategy::NoRework;
    uint32_t trials = 1;
};

/// A complete experiment description, loaded from JSON. Times are ticks
/// (milliseconds in simulation). The chain config inside is fully formed:
/// the loader derives validator keys, the write set and genesis issuances
/// from the node and trader rosters.
struct Scenario {
    std::string name;
    uint64_t rng_seed = 1;
    uint64_t duration = 0;
    uint64_t day_length = 0; // 0 disables trading-day processing
    uint64_t latency_min = 0;
    uint64_t latency_max = 0;
    double hashrate = 1.0; // header attempts per tick per unit of power
    ledger::ChainConfig config;
    std::vector<NodeSpec> nodes;
    std::vector<TraderSpec> traders;
    std::optional<FlowSpec> flow;
    std::vector<TamperEvent> tampers;
    std::vector<AuditEvent> audits;
    std::optional<DoubleSpendSpec> double_spend;
    std::optional<ForgerySpec> forgery;

    const NodeSpec* find_node(const ledger::NodeId& id) const;
    const TraderSpec* find_trader(const std::string& id) const;

    static std::optional<Scenario> from_json(const std::string& text, std::string* error);
    static std::optional<Scenario> load(const std::string& path, std::string* error);
};

/// Deterministic key derivation shared by the loader, the tools and the
/// tests: the same id always names the same keypair.
consensus::KeyPair node_keys(const ledger::NodeId& id);
consensus::KeyPair trader_keys(const std::string& id);

} // namespace hldg::netsim
