// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <sodium.h>

#include "hldg/consensus/difficulty.hpp"
#include "hldg/consensus/keys.hpp"
#include "hldg/consensus/miner.hpp"
#include "hldg/ledger/block.hpp"
#include "hldg/ledger/chain.hpp"
#include "hldg/ledger/codec.hpp"
#include "hldg/ledger/hex.hpp"
#include "hldg/ledger/validate.hpp"
#include "hldg/netsim/scenario.hpp"
#include "hldg/netsim/sim.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace hldg;

namespace {

// Exit contract: 0 success, 1 a check came back negative (tamper found,
// digests disagree), 2 usage or input trouble.
constexpr int kOk = 0;
constexpr int kDetect = 1;
constexpr int kUsage = 2;

/// Output paths resolve against HLDG_OUT_DIR when set and relative.
fs::path out_path(const std::string& p)
{
    const char* base = std::getenv("HLDG_OUT_DIR");
    fs::path path(p);
    if (base && *base && path.is_relative()) path = fs::path(base) / path;
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    return path;
}

int fail(const std::string& why)
{
    std::cerr << "error: " << why << "\n";
    return kUsage;
}

void emit(const json& j, const std::string& to_file)
{
    const std::string text = j.dump(2) + "\n";
    if (to_file.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path(to_file), std::ios::binary);
    out << text;
}

std::optional<std::string> slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::optional<ledger::Chain> load_chain(const std::string& path, std::string* err)
{
    return ledger::Chain::load(path, err);
}

/// Ruleset for a loaded chain: explicit file wins, else genesis describes it.
std::optional<ledger::ChainConfig> ruleset_for(const ledger::Chain& chain,
                                               const std::string& config_path,
                                               std::string* err)
{
    if (!config_path.empty()) {
        const auto text = slurp(config_path);
        if (!text) {
            *err = "cannot open " + config_path;
            return std::nullopt;
        }
        return ledger::ChainConfig::from_json(*text, err);
    }
    if (chain.empty()) {
        *err = "chain has no genesis";
        return std::nullopt;
    }
    auto cfg = ledger::genesis_config(chain.blocks.front());
    if (!cfg) *err = "genesis does not carry a readable ruleset";
    return cfg;
}

int cmd_keygen(const std::string& seed_hex, const std::string& out_file)
{
    consensus::KeyPair kp;
    if (!seed_hex.empty()) {
        const auto seed = ledger::Digest32::from_hex(seed_hex);
        if (!seed) return fail("--seed must be 32 bytes of hex");
        kp = consensus::keygen(*seed);
    } else {
        std::array<uint8_t, consensus::kSeedLen> seed{};
        randombytes_buf(seed.data(), seed.size());
        kp = consensus::keygen(seed);
    }
    json j;
    j["address"] = consensus::address_of(kp.public_key).hex();
    j["pubkey"] = ledger::to_hex(kp.public_key);
    std::string encoded = consensus::encode_key_file(kp);
    if (!out_file.empty()) {
        std::ofstream out(out_path(out_file), std::ios::binary);
        if (!out) return fail("cannot write " + out_file);
        out << encoded;
        j["key_file"] = out_file;
    } else {
        while (!encoded.empty() && encoded.back() == '\n') encoded.pop_back();
        j["key"] = encoded;
    }
    emit(j, "");
    return kOk;
}

int cmd_init(const std::string& config_file, const std::string& chain_file)
{
    const auto text = slurp(config_file);
    if (!text) return fail("cannot open " + config_file);
    std::string err;
    const auto cfg = ledger::ChainConfig::from_json(*text, &err);
    if (!cfg) return fail("config: " + err);
    ledger::Chain chain;
    chain.blocks.push_back(ledger::make_genesis(*cfg));
    if (!chain.save(out_path(chain_file), &err)) return fail(err);
    json j;
    j["chain"] = chain_file;
    j["height"] = chain.tip_height();
    j["genesis"] = chain.tip_hash().hex();
    emit(j, "");
    return kOk;
}

int cmd_mine(const std::string& chain_file, uint32_t blocks, uint32_t step,
             const std::string& out_file)
{
    std::string err;
    auto chain = load_chain(chain_file, &err);
    if (!chain) return fail(err);
    const auto cfg = ruleset_for(*chain, "", &err);
    if (!cfg) return fail(err);
    if (cfg->consensus_mode != ledger::ConsensusMode::PoW)
        return fail("chain is not proof-of-work; blocks come from the rotation");
    for (uint32_t i = 0; i < blocks; ++i) {
        const uint32_t height = chain->height();
        ledger::Block b;
        ledger::Transaction marker;
        marker.kind = ledger::TxKind::Marker;
        ledger::Writer w;
        w.put_string("mined");
        w.put_u32(height);
        marker.payload = w.take();
        b.txs.push_back(std::move(marker));
        b.header.prev_hash = chain->tip_hash();
        b.header.timestamp =
            chain->tip().header.timestamp + (step ? step : cfg->target_interval);
        b.header.bits = consensus::expected_bits(chain->blocks, height, *cfg);
        b.header.merkle_root = *b.compute_merkle_root();
        const auto mined = consensus::pow_mine(b.header);
        if (!mined.found) return fail("nonce search failed");
        b.header = mined.header;
        chain->blocks.push_back(std::move(b));
    }
    const std::string target = out_file.empty() ? chain_file : out_file;
    if (!chain->save(out_path(target), &err)) return fail(err);
    json j;
    j["chain"] = target;
    j["height"] = chain->tip_height();
    j["tip"] = chain->tip_hash().hex();
    emit(j, "");
    return kOk;
}

/// A run is clean when the canonical chain validates, every replica agrees,
/// trading books balance, no audit found tampering and no forged chain
/// slipped past both checks. Measurements (race frequencies) don't count.
bool run_clean(const netsim::SimReport& rep)
{
    if (!rep.final_chain_valid || !rep.all_agree) return false;
    if (rep.trading && (!rep.conservation_ok || rep.negative_balances))
        return false;
    for (const auto& f : rep.audits)
        if (f.report.tampered) return false;
    for (const auto& t : rep.forgeries)
        if (!t.caught) return false;
    return true;
}

int cmd_run(const std::string& scenario_file, const std::string& report_file,
            const std::string& chain_file, const std::string& chains_dir,
            const std::string& races_csv, int64_t seed_override)
{
    std::string err;
    auto sc = netsim::Scenario::load(scenario_file, &err);
    if (!sc) return fail("scenario: " + err);
    if (seed_override >= 0) sc->rng_seed = static_cast<uint64_t>(seed_override);
    netsim::Simulation sim(*sc);
    const netsim::SimReport rep = sim.run();
    if (!chain_file.empty()) {
        const ledger::Chain& canon = sim.chains()[sim.canonical_index()];
        if (!canon.save(out_path(chain_file), &err)) return fail(err);
    }
    if (!chains_dir.empty()) {
        for (size_t i = 0; i < sc->nodes.size(); ++i) {
            const fs::path p =
                out_path((fs::path(chains_dir) / (sc->nodes[i].id + ".dat")).string());
            if (!sim.chains()[i].save(p, &err)) return fail(err);
        }
    }
    if (!races_csv.empty()) {
        if (!rep.double_spend)
            return fail("--races-csv needs a scenario with a double_spend block");
        std::ofstream csv(out_path(races_csv), std::ios::binary);
        if (!csv) return fail("cannot write " + races_csv);
        csv << "run,success,steps,final_lead\n";
        const auto& races = rep.double_spend->races;
        for (size_t i = 0; i < races.size(); ++i)
            csv << i << "," << (races[i].success ? 1 : 0) << "," << races[i].steps
                << "," << races[i].final_lead << "\n";
    }
    const bool clean = run_clean(rep);
    if (report_file.empty()) {
        std::cout << rep.to_json();
    } else {
        std::ofstream out(out_path(report_file), std::ios::binary);
        if (!out) return fail("cannot write " + report_file);
        out << rep.to_json();
        // Structured detail went to the file; summarize for the operator.
        std::cout << rep.scenario << ": height " << rep.final_height << ", "
                  << (rep.all_agree ? "replicas agree" : "replicas DIVERGE") << ", "
                  << (rep.final_chain_valid ? "chain valid" : "chain INVALID");
        uint64_t found = 0;
        for (const auto& f : rep.audits) found += f.report.tampered ? 1 : 0;
        if (!rep.audits.empty())
            std::cout << ", audits flagged " << found << "/" << rep.audits.size();
        std::cout << (clean ? "" : " -- violations detected") << "\n"
                  << "report: " << report_file << "\n";
    }
    return clean ? kOk : kDetect;
}

int cmd_audit(const std::string& chain_file, const std::string& config_file)
{
    std::string err;
    const auto chain = load_chain(chain_file, &err);
    if (!chain) return fail(err);
    ledger::TamperReport rep;
    if (config_file.empty()) {
        rep = ledger::locate_tamper(*chain);
    } else {
        const auto cfg = ruleset_for(*chain, config_file, &err);
        if (!cfg) return fail(err);
        rep = ledger::locate_tamper(*chain, *cfg);
    }
    json j;
    j["chain"] = chain_file;
    j["height"] = chain->tip_height();
    j["tampered"] = rep.tampered;
    if (rep.tampered) {
        j["first_bad_height"] = rep.height;
        j["invalidated"] = rep.invalidated;
        j["reason"] = ledger::to_string(rep.reason);
        j["detail"] = rep.detail;
    }
    emit(j, "");
    return rep.tampered ? kDetect : kOk;
}

int cmd_crosscheck(const std::string& chain_file, const std::string& against_file,
                   int64_t height_arg, const std::string& digest_hex)
{
    std::string err;
    const auto chain = load_chain(chain_file, &err);
    if (!chain) return fail(err);

    uint32_t height = 0;
    ledger::Digest32 digest{};
    if (!against_file.empty()) {
        const auto other = load_chain(against_file, &err);
        if (!other) return fail(err);
        if (other->empty()) return fail("counterparty chain is empty");
        height = other->tip_height();
        digest = other->tip_hash();
    } else {
        if (height_arg < 0 || digest_hex.empty())
            return fail("crosscheck needs --against, or --height and --digest");
        const auto d = ledger::Digest32::from_hex(digest_hex);
        if (!d) return fail("--digest must be 32 bytes of hex");
        height = static_cast<uint32_t>(height_arg);
        digest = *d;
    }

    const ledger::CrossCheckResult res = ledger::cross_check(*chain, height, digest);
    json j;
    j["chain"] = chain_file;
    j["height"] = height;
    j["digest"] = digest.hex();
    j["result"] = ledger::to_string(res);
    emit(j, "");
    return res == ledger::CrossCheckResult::Match ? kOk : kDetect;
}

const char* tx_kind_name(ledger::TxKind k)
{
    switch (k) {
    case ledger::TxKind::Ruleset: return "ruleset";
    case ledger::TxKind::Issuance: return "issuance";
    case ledger::TxKind::Transfer: return "transfer";
    case ledger::TxKind::TradeRecord: return "trade_record";
    case ledger::TxKind::Settlement: return "settlement";
    case ledger::TxKind::Marker: return "marker";
    }
    return "unknown";
}

int cmd_export(const std::string& chain_file, const std::string& out_file)
{
    std::string err;
    const auto chain = load_chain(chain_file, &err);
    if (!chain) return fail(err);
    const auto cfg = ruleset_for(*chain, "", &err);

    json j;
    j["chain"] = chain_file;
    j["height"] = chain->tip_height();
    j["tip"] = chain->tip_hash().hex();
    if (cfg) j["config"] = json::parse(cfg->to_json());
    json blocks = json::array();
    for (uint32_t h = 0; h < chain->height(); ++h) {
        const ledger::Block& b = chain->blocks[h];
        json jb;
        jb["height"] = h;
        jb["hash"] = b.hash().hex();
        jb["prev"] = b.header.prev_hash.hex();
        jb["merkle_root"] = b.header.merkle_root.hex();
        jb["timestamp"] = b.header.timestamp;
        jb["bits"] = b.header.bits;
        jb["nonce"] = b.header.nonce;
        if (b.signer) jb["signer"] = b.signer->node;
        json txs = json::array();
        for (const auto& tx : b.txs) {
            json jt;
            jt["kind"] = tx_kind_name(tx.kind);
            jt["id"] = tx.id().hex();
            if (tx.is_signed_kind()) {
                jt["from"] = tx.from.hex();
                jt["to"] = tx.to.hex();
                jt["asset"] = tx.asset.kind == ledger::AssetKind::Cash
                                  ? "cash"
                                  : tx.asset.symbol;
                jt["amount"] = tx.amount;
                jt["seq"] = tx.seq;
            }
            txs.push_back(jt);
        }
        jb["txs"] = txs;
        blocks.push_back(jb);
    }
    j["blocks"] = blocks;
    emit(j, out_file);
    if (!out_file.empty()) {
        json note;
        note["exported"] = out_file;
        note["height"] = chain->tip_height();
        emit(note, "");
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hldg: permissioned securities ledger tools"};
    app.require_subcommand(1);

    std::string seed_hex, key_out;
    auto* keygen = app.add_subcommand("keygen", "derive or generate a signing key");
    keygen->add_option("--seed", seed_hex, "32-byte hex seed (omit for random)");
    keygen->add_option("--out", key_out, "key file to write");

    std::string init_config, init_chain = "chain.dat";
    auto* init = app.add_subcommand("init", "write a genesis chain from a config");
    init->add_option("--config", init_config, "ruleset JSON")->required();
    init->add_option("--out", init_chain, "chain file to create");

    std::string mine_chain, mine_out;
    uint32_t mine_blocks = 1, mine_step = 0;
    auto* mine = app.add_subcommand("mine", "extend a proof-of-work chain");
    mine->add_option("--chain", mine_chain, "chain file")->required();
    mine->add_option("--blocks", mine_blocks, "blocks to mine");
    mine->add_option("--step", mine_step, "ticks between block timestamps");
    mine->add_option("--out", mine_out, "write here instead of in place");

    std::string run_scenario, run_report, run_chain, run_chains_dir, run_csv;
    int64_t run_seed = -1;
    auto* run = app.add_subcommand("run", "run a simulation scenario");
    run->add_option("--scenario", run_scenario, "scenario JSON")->required();
    run->add_option("--report", run_report, "report file (default stdout)");
    run->add_option("--seed", run_seed, "override the scenario rng_seed");
    run->add_option("--save-chain", run_chain, "write the canonical chain here");
    run->add_option("--save-chains", run_chains_dir, "write every replica here");
    run->add_option("--races-csv", run_csv, "per-race double-spend CSV");

    std::string audit_chain, audit_config;
    auto* audit = app.add_subcommand("audit", "validate a chain and locate tampering");
    audit->add_option("--chain", audit_chain, "chain file")->required();
    audit->add_option("--config", audit_config, "explicit ruleset JSON");

    std::string cc_chain, cc_against, cc_digest;
    int64_t cc_height = -1;
    auto* cc = app.add_subcommand("crosscheck",
                                  "compare a recorded digest against a chain");
    cc->add_option("--chain", cc_chain, "chain file")->required();
    cc->add_option("--against", cc_against, "counterparty chain file");
    cc->add_option("--height", cc_height, "recorded height");
    cc->add_option("--digest", cc_digest, "recorded block hash (hex)");

    std::string exp_chain, exp_out;
    auto* exp = app.add_subcommand("export", "dump a chain as JSON");
    exp->add_option("--chain", exp_chain, "chain file")->required();
    exp->add_option("--out", exp_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand(keygen)) return cmd_keygen(seed_hex, key_out);
        if (app.got_subcommand(init)) return cmd_init(init_config, init_chain);
        if (app.got_subcommand(mine))
            return cmd_mine(mine_chain, mine_blocks, mine_step, mine_out);
        if (app.got_subcommand(run))
            return cmd_run(run_scenario, run_report, run_chain, run_chains_dir,
                           run_csv, run_seed);
        if (app.got_subcommand(audit)) return cmd_audit(audit_chain, audit_config);
        if (app.got_subcommand(cc))
            return cmd_crosscheck(cc_chain, cc_against, cc_height, cc_digest);
        if (app.got_subcommand(exp)) return cmd_export(exp_chain, exp_out);
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    return kUsage;
}
