// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/netsim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hldg/ledger/hex.hpp"
#include "hldg/ledger/sha256.hpp"

namespace hldg::netsim {

using json = nlohmann::json;
using ledger::NodeId;

consensus::KeyPair node_keys(const NodeId& id)
{
    return consensus::keygen(ledger::sha256("node/" + id));
}

consensus::KeyPair trader_keys(const std::string& id)
{
    return consensus::keygen(ledger::sha256("trader/" + id));
}

const NodeSpec* Scenario::find_node(const NodeId& id) const
{
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

const TraderSpec* Scenario::find_trader(const std::string& id) const
{
    for (const auto& t : traders)
        if (t.id == id) return &t;
    return nullptr;
}

std::optional<Scenario> Scenario::from_json(const std::string& text, std::string* error)
{
    auto fail = [&](const std::string& why) -> std::optional<Scenario> {
        if (error) *error = why;
        return std::nullopt;
    };
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return fail("scenario is not a JSON object");

    try {
        Scenario s;
        if (!j.contains("name")) return fail("scenario needs a name");
        s.name = j["name"].get<std::string>();
        if (j.contains("rng_seed")) s.rng_seed = j["rng_seed"].get<uint64_t>();
        if (!j.contains("duration")) return fail("scenario needs a duration");
        s.duration = j["duration"].get<uint64_t>();
        if (s.duration == 0) return fail("duration must be positive");
        if (j.contains("day_length")) s.day_length = j["day_length"].get<uint64_t>();
        if (j.contains("latency")) {
            const json& l = j["latency"];
            s.latency_min = l.at("min").get<uint64_t>();
            s.latency_max = l.at("max").get<uint64_t>();
            if (s.latency_max < s.latency_min) return fail("latency max below min");
        }
        if (j.contains("hashrate")) {
            s.hashrate = j["hashrate"].get<double>();
            if (s.hashrate <= 0.0) return fail("hashrate must be positive");
        }

        if (!j.contains("nodes") || !j["nodes"].is_array() || j["nodes"].empty())
            return fail("scenario needs a non-empty nodes array");
        std::set<NodeId> node_ids;
        for (const auto& jn : j["nodes"]) {
            NodeSpec n;
            n.id = jn.at("id").get<std::string>();
            if (n.id.empty()) return fail("node id must be non-empty");
            if (!node_ids.insert(n.id).second) return fail("duplicate node id: " + n.id);
            if (jn.contains("stake")) n.stake = jn["stake"].get<uint64_t>();
            if (jn.contains("writer")) n.writer = jn["writer"].get<bool>();
            if (jn.contains("power")) n.power = jn["power"].get<double>();
            if (n.power < 0.0) return fail("node " + n.id + ": negative power");
            n.keys = node_keys(n.id);
            s.nodes.push_back(std::move(n));
        }

        std::set<std::string> trader_ids;
        if (j.contains("traders")) {
            for (const auto& jt : j["traders"]) {
                TraderSpec t;
                t.id = jt.at("id").get<std::string>();
                if (t.id.empty()) return fail("trader id must be non-empty");
                if (!trader_ids.insert(t.id).second)
                    return fail("duplicate trader id: " + t.id);
                t.keys = trader_keys(t.id);
                t.address = consensus::address_of(t.keys.public_key);
                if (jt.contains("cash")) t.cash = jt["cash"].get<uint64_t>();
                if (jt.contains("holdings"))
                    for (const auto& [symbol, qty] : jt["holdings"].items())
                        t.holdings[symbol] = qty.get<uint64_t>();
                s.traders.push_back(std::move(t));
            }
        }

        if (j.contains("flow")) {
            const json& jf = j["flow"];
            FlowSpec f;
            f.orders = jf.at("orders").get<uint32_t>();
            if (jf.contains("start")) f.start = jf["start"].get<uint64_t>();
            if (jf.contains("spacing")) f.spacing = jf["spacing"].get<uint64_t>();
            if (f.spacing == 0) return fail("flow spacing must be positive");
            if (jf.contains("securities"))
                f.securities = jf["securities"].get<std::vector<std::string>>();
            if (f.securities.empty()) return fail("flow needs at least one security");
            if (jf.contains("qty_min")) f.qty_min = jf["qty_min"].get<uint64_t>();
            if (jf.contains("qty_max")) f.qty_max = jf["qty_max"].get<uint64_t>();
            if (f.qty_min == 0 || f.qty_max < f.qty_min) return fail("bad flow quantity band");
            if (jf.contains("mid")) f.mid = jf["mid"].get<uint64_t>();
            if (jf.contains("half_spread")) f.half_spread = jf["half_spread"].get<uint64_t>();
            if (f.mid <= f.half_spread) return fail("flow price band reaches zero");
            if (s.traders.size() < 2) return fail("order flow needs at least two traders");
            s.flow = f;
        }

        if (j.contains("tampers")) {
            for (const auto& jt : j["tampers"]) {
                TamperEvent t;
                t.at = jt.at("at").get<uint64_t>();
                t.node = jt.at("node").get<std::string>();
                t.height = jt.at("height").get<uint32_t>();
                if (!node_ids.count(t.node)) return fail("tamper names unknown node " + t.node);
                if (t.height == 0) return fail("tamper height must be positive");
                s.tampers.push_back(std::move(t));
            }
        }
        if (j.contains("audits")) {
            for (const auto& ja : j["audits"]) {
                AuditEvent a;
                a.at = ja.at("at").get<uint64_t>();
                s.audits.push_back(a);
            }
        }

        if (j.contains("double_spend")) {
            const json& jd = j["double_spend"];
            DoubleSpendSpec d;
            d.q = jd.at("q").get<double>();
            if (d.q < 0.0 || d.q >= 1.0) return fail("double_spend q must be in [0, 1)");
            d.z = jd.at("z").get<uint32_t>();
            if (jd.contains("runs")) d.runs = jd["runs"].get<uint32_t>();
            if (d.runs == 0) return fail("double_spend needs runs");
            s.double_spend = d;
        }
        if (j.contains("forgery")) {
            const json& jf = j["forgery"];
            ForgerySpec f;
            f.tamper_height = jf.at("tamper_height").get<uint32_t>();
            if (f.tamper_height == 0) return fail("forgery tamper_height must be positive");
            auto strat = forgery_strategy_from_string(jf.at("strategy").get<std::string>());
            if (!strat) return fail("unknown forgery strategy");
            f.strategy = *strat;
            if (jf.contains("trials")) f.trials = jf["trials"].get<uint32_t>();
            if (f.trials == 0) return fail("forgery needs trials");
            s.forgery = f;
        }

        if (!j.contains("config") || !j["config"].is_object())
            return fail("scenario needs a config object");
        json merged = j["config"];
        json vals = json::array();
        for (const auto& n : s.nodes) {
            json jv;
            jv["id"] = n.id;
            jv["pubkey"] = ledger::to_hex(n.keys.public_key);
            jv["stake"] = n.stake;
            vals.push_back(jv);
        }
        merged["validators"] = vals;
        if (!merged.contains("write_set")) {
            std::vector<NodeId> writers;
            for (const auto& n : s.nodes)
                if (n.writer) writers.push_back(n.id);
            merged["write_set"] = writers;
        }
        json iss = merged.contains("genesis_issuances") ? merged["genesis_issuances"]
                                                        : json::array();
        for (const auto& t : s.traders) {
            if (t.cash > 0) {
                json ji;
                ji["to_address"] = t.address.hex();
                ji["asset"] = "cash";
                ji["amount"] = t.cash;
                iss.push_back(ji);
            }
            for (const auto& [symbol, qty] : t.holdings) {
                if (qty == 0) continue;
                json ji;
                ji["to_address"] = t.address.hex();
                ji["asset"] = symbol;
                ji["amount"] = qty;
                iss.push_back(ji);
            }
        }
        merged["genesis_issuances"] = iss;

        std::string cfg_error;
        auto cfg = ledger::ChainConfig::from_json(merged.dump(), &cfg_error);
        if (!cfg) return fail("config: " + cfg_error);
        s.config = std::move(*cfg);

        if (s.config.consensus_mode == ledger::ConsensusMode::RoundRobin) {
            for (const auto& id : s.config.write_set)
                if (!node_ids.count(id)) return fail("write_set names unknown node " + id);
        }
        if (s.forgery &&
            s.forgery->strategy == ForgeryStrategy::FullRemine &&
            s.config.consensus_mode != ledger::ConsensusMode::PoW)
            return fail("full_remine forgery needs a pow scenario");
        if (s.forgery &&
            s.forgery->strategy == ForgeryStrategy::RrWithoutKeys &&
            s.config.consensus_mode != ledger::ConsensusMode::RoundRobin)
            return fail("rr_without_keys forgery needs a round_robin scenario");
        return s;
    } catch (const json::exception& e) {
        return fail(e.what());
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

std::optional<Scenario> Scenario::load(const std::string& path, std::string* error)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (error) *error = "cannot open " + path;
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str(), error);
}

} // namespace hldg::netsim
