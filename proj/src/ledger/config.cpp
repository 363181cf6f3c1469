// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/ledger/config.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "hldg/consensus/keys.hpp"
#include "hldg/ledger/hex.hpp"

using nlohmann::json;

namespace hldg::ledger {

Bytes ChainConfig::canonical_bytes() const {
    Writer w;
    w.put_u8(static_cast<uint8_t>(consensus_mode));
    w.put_u8(static_cast<uint8_t>(permission_mode));
    w.put_u8(read_open ? 1 : 0);
    w.put_u8(static_cast<uint8_t>(settlement_mode));
    w.put_u32(cycle_days);
    w.put_u8(static_cast<uint8_t>(failure_policy));
    w.put_u32(target_interval);
    w.put_u32(retarget_window);
    w.put_u32(max_retarget_factor);
    w.put_u32(initial_bits);
    w.put_u32(epoch_length);
    w.put_u8(sig_scheme);
    w.put_u32(genesis_timestamp);
    w.put_u32(static_cast<uint32_t>(validators.size()));
    for (const auto& v : validators) {
        w.put_string(v.id);
        w.put_var_bytes(v.pubkey);
        w.put_u64(v.stake);
    }
    w.put_u32(static_cast<uint32_t>(write_set.size()));
    for (const auto& id : write_set) w.put_string(id);
    w.put_u32(static_cast<uint32_t>(genesis_issuances.size()));
    for (const auto& gi : genesis_issuances) {
        w.put_digest(gi.to);
        w.put_u8(static_cast<uint8_t>(gi.asset.kind));
        w.put_string(gi.asset.symbol);
        w.put_u64(gi.amount);
    }
    return w.take();
}

ChainConfig ChainConfig::from_canonical(Reader& r) {
    ChainConfig cfg;
    uint8_t cm = r.get_u8();
    if (cm > 1) throw CodecError("bad consensus mode");
    cfg.consensus_mode = static_cast<ConsensusMode>(cm);
    uint8_t pm = r.get_u8();
    if (pm > 2) throw CodecError("bad permission mode");
    cfg.permission_mode = static_cast<PermissionMode>(pm);
    cfg.read_open = r.get_u8() != 0;
    uint8_t sm = r.get_u8();
    if (sm > 1) throw CodecError("bad settlement mode");
    cfg.settlement_mode = static_cast<SettlementMode>(sm);
    cfg.cycle_days = r.get_u32();
    uint8_t fp = r.get_u8();
    if (fp > 1) throw CodecError("bad failure policy");
    cfg.failure_policy = static_cast<FailurePolicy>(fp);
    cfg.target_interval = r.get_u32();
    cfg.retarget_window = r.get_u32();
    cfg.max_retarget_factor = r.get_u32();
    cfg.initial_bits = r.get_u32();
    cfg.epoch_length = r.get_u32();
    cfg.sig_scheme = r.get_u8();
    cfg.genesis_timestamp = r.get_u32();
    uint32_t nv = r.get_u32();
    for (uint32_t i = 0; i < nv; ++i) {
        ValidatorEntry v;
        v.id = r.get_string();
        v.pubkey = r.get_var_bytes();
        v.stake = r.get_u64();
        cfg.validators.push_back(std::move(v));
    }
    uint32_t nw = r.get_u32();
    for (uint32_t i = 0; i < nw; ++i) cfg.write_set.push_back(r.get_string());
    uint32_t ni = r.get_u32();
    for (uint32_t i = 0; i < ni; ++i) {
        GenesisIssuance gi;
        gi.to = r.get_digest();
        uint8_t ak = r.get_u8();
        if (ak > 1) throw CodecError("bad asset kind");
        gi.asset.kind = static_cast<AssetKind>(ak);
        gi.asset.symbol = r.get_string();
        gi.amount = r.get_u64();
        cfg.genesis_issuances.push_back(std::move(gi));
    }
    return cfg;
}

std::optional<ChainConfig> ChainConfig::from_canonical(std::span<const uint8_t> data) {
    try {
        Reader r(data);
        ChainConfig cfg = from_canonical(r);
        if (!r.at_end()) return std::nullopt;
        return cfg;
    } catch (const CodecError&) {
        return std::nullopt;
    }
}

std::optional<std::string> ChainConfig::check() const {
    if (permission_mode != PermissionMode::Public && write_set.empty())
        return "write_set must be non-empty unless permission_mode is public";
    if (cycle_days > 3) return "cycle_days must be in 0..3";
    if (max_retarget_factor <= 1) return "max_retarget_factor must exceed 1";
    if (target_interval == 0) return "target_interval must be positive";
    if (retarget_window == 0) return "retarget_window must be positive";
    if (epoch_length == 0) return "epoch_length must be positive";
    if (sig_scheme != static_cast<uint8_t>(consensus::SigScheme::Ed25519))
        return "unknown signature scheme";
    std::set<NodeId> ids;
    for (const auto& v : validators) {
        if (v.id.empty()) return "validator id must be non-empty";
        if (!ids.insert(v.id).second) return "duplicate validator id: " + v.id;
        if (v.pubkey.size() != consensus::kPublicKeyLen)
            return "validator " + v.id + " has a malformed public key";
    }
    for (const auto& id : write_set)
        if (!ids.count(id)) return "write_set entry not a validator: " + id;
    if (consensus_mode == ConsensusMode::RoundRobin && write_set.empty())
        return "round-robin mode requires a non-empty write_set";
    if (consensus_mode == ConsensusMode::PoW && initial_bits == 0)
        return "pow mode requires a non-zero initial_bits";
    for (const auto& gi : genesis_issuances) {
        if (gi.amount == 0) return "issuance amount must be positive";
        if (gi.asset.kind == AssetKind::Security && gi.asset.symbol.empty())
            return "security issuance needs a symbol";
    }
    return std::nullopt;
}

const ValidatorEntry* ChainConfig::find_validator(const NodeId& id) const {
    for (const auto& v : validators)
        if (v.id == id) return &v;
    return nullptr;
}

bool ChainConfig::may_write(const NodeId& id) const {
    if (permission_mode == PermissionMode::Public) return true;
    return std::find(write_set.begin(), write_set.end(), id) != write_set.end();
}

std::map<NodeId, uint64_t> ChainConfig::stake_table() const {
    std::map<NodeId, uint64_t> stakes;
    for (const auto& v : validators) stakes[v.id] = v.stake;
    return stakes;
}

namespace {

const char* consensus_name(ConsensusMode m) {
    return m == ConsensusMode::PoW ? "pow" : "round_robin";
}
const char* permission_name(PermissionMode m) {
    switch (m) {
        case PermissionMode::Public: return "public";
        case PermissionMode::Private: return "private";
        default: return "hybrid";
    }
}

template <typename T>
std::optional<T> parse_enum(const std::string& s,
                            std::initializer_list<std::pair<const char*, T>> names) {
    for (const auto& [name, value] : names)
        if (s == name) return value;
    return std::nullopt;
}

} // namespace

std::string ChainConfig::to_json() const {
    json j;
    j["consensus_mode"] = consensus_name(consensus_mode);
    j["permission_mode"] = permission_name(permission_mode);
    j["write_set"] = write_set;
    j["read_open"] = read_open;
    j["settlement_mode"] = settlement_mode == SettlementMode::Instant ? "instant" : "cycle";
    j["cycle_days"] = cycle_days;
    j["failure_policy"] = failure_policy == FailurePolicy::Carry ? "carry" : "cancel";
    j["target_interval"] = target_interval;
    j["retarget_window"] = retarget_window;
    j["max_retarget_factor"] = max_retarget_factor;
    j["initial_bits"] = initial_bits;
    j["epoch_length"] = epoch_length;
    j["sig_scheme"] = "ed25519";
    j["genesis_timestamp"] = genesis_timestamp;
    json vals = json::array();
    for (const auto& v : validators) {
        json jv;
        jv["id"] = v.id;
        jv["pubkey"] = to_hex(v.pubkey);
        jv["stake"] = v.stake;
        vals.push_back(jv);
    }
    j["validators"] = vals;
    json iss = json::array();
    for (const auto& gi : genesis_issuances) {
        json ji;
        ji["to_address"] = gi.to.hex();
        ji["asset"] = gi.asset.kind == AssetKind::Cash ? "cash" : gi.asset.symbol;
        ji["amount"] = gi.amount;
        iss.push_back(ji);
    }
    j["genesis_issuances"] = iss;
    return j.dump(2) + "\n";
}

std::optional<ChainConfig> ChainConfig::from_json(const std::string& text, std::string* error) {
    auto fail = [&](const std::string& why) -> std::optional<ChainConfig> {
        if (error) *error = why;
        return std::nullopt;
    };
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return fail("config is not a JSON object");

    try {
        ChainConfig cfg;
        if (j.contains("consensus_mode")) {
            auto m = parse_enum<ConsensusMode>(j["consensus_mode"],
                                               {{"pow", ConsensusMode::PoW},
                                                {"round_robin", ConsensusMode::RoundRobin}});
            if (!m) return fail("unknown consensus_mode");
            cfg.consensus_mode = *m;
        }
        if (j.contains("permission_mode")) {
            auto m = parse_enum<PermissionMode>(j["permission_mode"],
                                                {{"public", PermissionMode::Public},
                                                 {"private", PermissionMode::Private},
                                                 {"hybrid", PermissionMode::Hybrid}});
            if (!m) return fail("unknown permission_mode");
            cfg.permission_mode = *m;
        }
        if (j.contains("settlement_mode")) {
            auto m = parse_enum<SettlementMode>(j["settlement_mode"],
                                                {{"instant", SettlementMode::Instant},
                                                 {"cycle", SettlementMode::Cycle}});
            if (!m) return fail("unknown settlement_mode");
            cfg.settlement_mode = *m;
        }
        if (j.contains("failure_policy")) {
            auto m = parse_enum<FailurePolicy>(j["failure_policy"],
                                               {{"carry", FailurePolicy::Carry},
                                                {"cancel", FailurePolicy::Cancel}});
            if (!m) return fail("unknown failure_policy");
            cfg.failure_policy = *m;
        }
        if (j.contains("sig_scheme")) {
            if (j["sig_scheme"] != "ed25519") return fail("unknown sig_scheme");
            cfg.sig_scheme = static_cast<uint8_t>(consensus::SigScheme::Ed25519);
        }
        if (j.contains("write_set")) cfg.write_set = j["write_set"].get<std::vector<NodeId>>();
        if (j.contains("read_open")) cfg.read_open = j["read_open"].get<bool>();
        if (j.contains("cycle_days")) cfg.cycle_days = j["cycle_days"].get<uint32_t>();
        if (j.contains("target_interval")) cfg.target_interval = j["target_interval"].get<uint32_t>();
        if (j.contains("retarget_window")) cfg.retarget_window = j["retarget_window"].get<uint32_t>();
        if (j.contains("max_retarget_factor"))
            cfg.max_retarget_factor = j["max_retarget_factor"].get<uint32_t>();
        if (j.contains("initial_bits")) {
            if (j["initial_bits"].is_string()) {
                const std::string s = j["initial_bits"];
                cfg.initial_bits = static_cast<uint32_t>(std::stoul(s, nullptr, 0));
            } else {
                cfg.initial_bits = j["initial_bits"].get<uint32_t>();
            }
        }
        if (j.contains("epoch_length")) cfg.epoch_length = j["epoch_length"].get<uint32_t>();
        if (j.contains("genesis_timestamp"))
            cfg.genesis_timestamp = j["genesis_timestamp"].get<uint32_t>();

        if (j.contains("validators")) {
            for (const auto& jv : j["validators"]) {
                ValidatorEntry v;
                v.id = jv.at("id").get<std::string>();
                if (jv.contains("pubkey")) {
                    auto raw = from_hex(jv["pubkey"].get<std::string>());
                    if (!raw) return fail("validator " + v.id + ": bad pubkey hex");
                    v.pubkey = *raw;
                } else if (jv.contains("key_seed")) {
                    auto seed = Digest32::from_hex(jv["key_seed"].get<std::string>());
                    if (!seed) return fail("validator " + v.id + ": key_seed must be 32 bytes of hex");
                    v.pubkey = consensus::keygen(*seed).public_key;
                } else {
                    return fail("validator " + v.id + ": needs pubkey or key_seed");
                }
                if (jv.contains("stake")) v.stake = jv["stake"].get<uint64_t>();
                cfg.validators.push_back(std::move(v));
            }
        }
        if (j.contains("genesis_issuances")) {
            for (const auto& ji : j["genesis_issuances"]) {
                GenesisIssuance gi;
                if (ji.contains("to_address")) {
                    auto addr = Digest32::from_hex(ji["to_address"].get<std::string>());
                    if (!addr) return fail("issuance: bad to_address");
                    gi.to = *addr;
                } else if (ji.contains("to_validator")) {
                    const NodeId id = ji["to_validator"].get<std::string>();
                    const ValidatorEntry* v = cfg.find_validator(id);
                    if (!v) return fail("issuance: unknown validator " + id);
                    gi.to = consensus::address_of(v->pubkey);
                } else {
                    return fail("issuance: needs to_address or to_validator");
                }
                const std::string asset = ji.at("asset").get<std::string>();
                gi.asset = (asset == "cash") ? Asset::cash() : Asset::security(asset);
                gi.amount = ji.at("amount").get<uint64_t>();
                cfg.genesis_issuances.push_back(std::move(gi));
            }
        }

        if (auto why = cfg.check()) return fail(*why);
        return cfg;
    } catch (const json::exception& e) {
        return fail(e.what());
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

} // namespace hldg::ledger
