// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/netsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hldg/consensus/difficulty.hpp"
#include "hldg/consensus/fork_choice.hpp"
#include "hldg/consensus/miner.hpp"
#include "hldg/consensus/round_robin.hpp"
#include "hldg/consensus/stake.hpp"
#include "hldg/exchange/clearing.hpp"
#include "hldg/ledger/codec.hpp"
#include "hldg/ledger/sha256.hpp"

namespace hldg::netsim {

using json = nlohmann::json;
using ledger::Block;
using ledger::Chain;
using ledger::ChainConfig;
using ledger::NodeId;
using ledger::Transaction;
using ledger::TxKind;

namespace {

enum class EvKind : uint8_t {
    FindBlock,   // proof-of-work: a miner's next potential solve
    ProduceSlot, // rotation: the wall-clock slot for one height
    Deliver,     // a chain snapshot reaches a node
    OrderArrive, // synthetic order flow hits the venue
    DayRoll,     // trading day boundary
    Tamper,      // scripted local-history corruption
    Audit,       // scripted audit sweep over every node
};

struct Event {
    uint64_t time = 0;
    uint64_t seq = 0; // insertion order; total tiebreak keeps runs identical
    EvKind kind = EvKind::Audit;
    size_t node = 0;         // miner / receiver / tamper victim
    uint64_t generation = 0; // FindBlock staleness guard
    uint32_t number = 0;     // slot height / day / tamper height
    std::vector<Block> blocks;
    exchange::Order order;
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

double target_fraction(uint32_t bits)
{
    return consensus::expand_bits(bits).convert_to<double>() * 0x1.0p-256;
}

Transaction make_marker(const NodeId& producer, uint32_t height, uint64_t now)
{
    Transaction tx;
    tx.kind = TxKind::Marker;
    ledger::Writer w;
    w.put_string(producer);
    w.put_u32(height);
    w.put_u64(now);
    tx.payload = w.take();
    return tx;
}

/// All run state, torn down when run() returns.
struct Runner {
    const Scenario& sc;
    const ChainConfig& cfg;
    const bool pow;
    uint64_t end;

    SimRng rng;      // event-loop draws: latencies and solve times
    SimRng flow_rng; // order generation only

    std::priority_queue<Event, std::vector<Event>, EventAfter> q;
    uint64_t next_seq = 0;

    std::vector<Chain> chains;
    std::vector<uint64_t> produced;
    std::vector<uint64_t> generation;

    std::optional<exchange::ExchangeEngine> engine;
    std::optional<NodeId> matcher;
    std::vector<Transaction> pending_txs;
    uint64_t next_record_seq = 0;

    SimReport rep;

    explicit Runner(const Scenario& s)
        : sc(s),
          cfg(s.config),
          pow(s.config.consensus_mode == ledger::ConsensusMode::PoW),
          end(uint64_t(s.config.genesis_timestamp) + s.duration),
          rng(mix_seed(s.rng_seed, 2)),
          flow_rng(mix_seed(s.rng_seed, 1))
    {
        rep.scenario = sc.name;
        rep.seed = sc.rng_seed;
        rep.duration = sc.duration;
        rep.target_interval = cfg.target_interval;
    }

    void push(Event e)
    {
        e.seq = next_seq++;
        q.push(std::move(e));
    }

    size_t best_index() const
    {
        if (pow) return consensus::fork_choice(chains).value_or(0);
        size_t best = 0;
        for (size_t i = 1; i < chains.size(); ++i)
            if (chains[i].height() > chains[best].height()) best = i;
        return best;
    }

    std::optional<NodeId> elect(uint32_t day) const
    {
        ledger::Writer w;
        w.put_digest(chains[best_index()].tip_hash());
        w.put_u32(day);
        return consensus::pos_elect_matcher(ledger::sha256(w.take()), cfg);
    }

    const NodeSpec& matcher_spec() const
    {
        const NodeSpec* n = sc.find_node(*matcher);
        if (!n) throw std::logic_error("matcher is not a scenario node");
        return *n;
    }

    void seed_events()
    {
        Chain base;
        base.blocks.push_back(ledger::make_genesis(cfg));
        chains.assign(sc.nodes.size(), base);
        produced.assign(sc.nodes.size(), 0);
        generation.assign(sc.nodes.size(), 0);

        const uint64_t gts = cfg.genesis_timestamp;

        if (pow) {
            for (size_t i = 0; i < sc.nodes.size(); ++i)
                schedule_find(i, gts);
        } else {
            for (uint64_t h = 1; gts + h * cfg.target_interval <= end; ++h) {
                Event e;
                e.time = gts + h * cfg.target_interval;
                e.kind = EvKind::ProduceSlot;
                e.number = static_cast<uint32_t>(h);
                push(std::move(e));
            }
        }

        if (!sc.traders.empty() || sc.flow) {
            engine.emplace(exchange::ExchangeEngine::from_config(cfg));
            for (const auto& t : sc.traders) {
                if (t.cash > 0)
                    engine->credit(t.address, ledger::Asset::cash(), t.cash);
                for (const auto& [symbol, qty] : t.holdings)
                    if (qty > 0)
                        engine->credit(t.address, ledger::Asset::security(symbol), qty);
            }
            rep.trading = true;
            matcher = elect(0);
            if (sc.flow && !matcher)
                throw std::invalid_argument("order flow needs staked validators");
            if (matcher) rep.matchers[0] = *matcher;
        }

        if (sc.flow) {
            const FlowSpec& f = *sc.flow;
            std::map<std::string, uint64_t> seqs;
            for (uint32_t i = 0; i < f.orders; ++i) {
                const uint64_t t = gts + f.start + uint64_t(i) * f.spacing;
                if (t > end) break;
                const TraderSpec& who =
                    sc.traders[flow_rng.uniform(0, sc.traders.size() - 1)];
                const auto side = flow_rng.bernoulli(0.5) ? exchange::Side::Buy
                                                          : exchange::Side::Sell;
                const std::string& sec =
                    f.securities[flow_rng.uniform(0, f.securities.size() - 1)];
                const uint64_t qty = flow_rng.uniform(f.qty_min, f.qty_max);
                const uint64_t price =
                    flow_rng.uniform(f.mid - f.half_spread, f.mid + f.half_spread);
                Event e;
                e.time = t;
                e.kind = EvKind::OrderArrive;
                e.order = exchange::make_order(who.keys, side, sec, qty, price,
                                               seqs[who.id]++);
                push(std::move(e));
            }
        }

        if (engine && sc.day_length > 0) {
            for (uint64_t d = 1; gts + d * sc.day_length <= end; ++d) {
                Event e;
                e.time = gts + d * sc.day_length;
                e.kind = EvKind::DayRoll;
                e.number = static_cast<uint32_t>(d);
                push(std::move(e));
            }
        }

        for (const auto& t : sc.tampers) {
            Event e;
            e.time = t.at;
            e.kind = EvKind::Tamper;
            for (size_t i = 0; i < sc.nodes.size(); ++i)
                if (sc.nodes[i].id == t.node) e.node = i;
            e.number = t.height;
            push(std::move(e));
        }
        for (const auto& a : sc.audits) {
            Event e;
            e.time = a.at;
            e.kind = EvKind::Audit;
            push(std::move(e));
        }
    }

    void schedule_find(size_t i, uint64_t now)
    {
        const uint64_t gen = ++generation[i]; // invalidates any pending solve
        const double power = sc.nodes[i].power;
        if (power <= 0.0) return;
        const uint32_t h = chains[i].tip_height() + 1;
        const double rate =
            power * sc.hashrate *
            target_fraction(consensus::expected_bits(chains[i].blocks, h, cfg));
        if (rate <= 0.0) return;
        const double wait = rng.exponential(rate);
        // A solve past the horizon never fires; also fences llround overflow.
        if (!(wait >= 0.0) || wait > double(end)) return;
        const auto ticks = std::max<uint64_t>(
            1, static_cast<uint64_t>(std::llround(wait)));
        if (now + ticks > end) return;
        Event e;
        e.time = now + ticks;
        e.kind = EvKind::FindBlock;
        e.node = i;
        e.generation = gen;
        push(std::move(e));
    }

    /// Drain matched-but-unbooked records into the next block's body.
    void book_pending(std::vector<Transaction>& txs)
    {
        for (auto& tx : pending_txs) {
            if (tx.kind == TxKind::TradeRecord) ++rep.trade_records_booked;
            if (tx.kind == TxKind::Settlement) ++rep.settlements_booked;
            txs.push_back(std::move(tx));
        }
        pending_txs.clear();
    }

    void broadcast(size_t from, uint64_t now)
    {
        for (size_t j = 0; j < chains.size(); ++j) {
            if (j == from) continue;
            Event e;
            e.time = now + rng.uniform(sc.latency_min, sc.latency_max);
            e.kind = EvKind::Deliver;
            e.node = j;
            e.blocks = chains[from].blocks;
            push(std::move(e));
        }
    }

    void on_find(const Event& ev)
    {
        if (ev.generation != generation[ev.node]) return; // superseded
        Chain& c = chains[ev.node];
        const uint32_t h = c.tip_height() + 1;
        std::vector<Transaction> txs;
        txs.push_back(make_marker(sc.nodes[ev.node].id, h, ev.time));
        book_pending(txs);
        Block b;
        b.txs = std::move(txs);
        b.header.prev_hash = c.tip_hash();
        b.header.timestamp = static_cast<uint32_t>(ev.time);
        b.header.bits = consensus::expected_bits(c.blocks, h, cfg);
        b.header.merkle_root = b.compute_merkle_root().value();
        // The solve time was sampled; the nonce is found for real so the
        // block carries a checkable proof.
        const consensus::MineResult mined = consensus::pow_mine(b.header);
        if (!mined.found) throw std::runtime_error("nonce search failed");
        b.header = mined.header;
        c.blocks.push_back(std::move(b));
        ++produced[ev.node];
        ++rep.blocks_produced;
        broadcast(ev.node, ev.time);
        schedule_find(ev.node, ev.time);
    }

    void on_slot(const Event& ev)
    {
        const uint32_t h = ev.number;
        for (size_t i = 0; i < chains.size(); ++i) {
            if (chains[i].tip_height() != h - 1) continue;
            const auto who = consensus::scheduled_signer(chains[i], h, cfg);
            if (!who || *who != sc.nodes[i].id) continue;
            std::vector<Transaction> txs;
            txs.push_back(make_marker(sc.nodes[i].id, h, ev.time));
            book_pending(txs);
            auto res = consensus::rr_produce(chains[i], cfg, sc.nodes[i].id,
                                             sc.nodes[i].keys, std::move(txs),
                                             static_cast<uint32_t>(ev.time));
            if (!res.produced)
                throw std::logic_error("scheduled writer failed: " + res.reason);
            chains[i].blocks.push_back(std::move(res.block));
            ++produced[i];
            ++rep.blocks_produced;
            broadcast(i, ev.time);
            return;
        }
        ++rep.missed_slots; // no writer was ready; the slot stays empty
    }

    void on_deliver(const Event& ev)
    {
        Chain& mine = chains[ev.node];
        const std::vector<Block>& in = ev.blocks;
        // Honest peers send snapshots of chains they accepted, so a node
        // appends when the snapshot extends its tip; integrity is checked
        // by audits and by full validation of the final chain.
        if (in.size() > mine.blocks.size() &&
            in[mine.blocks.size() - 1].hash() == mine.tip_hash()) {
            for (size_t k = mine.blocks.size(); k < in.size(); ++k)
                mine.blocks.push_back(in[k]);
            if (pow) schedule_find(ev.node, ev.time);
            return;
        }
        if (!pow) return; // rotation forks only out of corrupted history
        Chain candidate;
        candidate.blocks = in;
        if (consensus::chain_work(candidate) > consensus::chain_work(mine)) {
            mine = std::move(candidate); // reorg: heavier fork wins
            schedule_find(ev.node, ev.time);
        }
    }

    void on_order(const Event& ev)
    {
        ++rep.orders_submitted;
        const auto res = engine->submit_order(ev.order);
        if (!res.accepted) {
            ++rep.orders_rejected;
            return;
        }
        ++rep.orders_accepted;
        rep.trades_executed += res.trades.size();
        if (!matcher) return;
        const NodeSpec& m = matcher_spec();
        for (const auto& t : res.trades)
            pending_txs.push_back(
                exchange::make_trade_record(m.keys, next_record_seq++, t));
    }

    void on_dayroll(const Event& ev)
    {
        const exchange::DayResult dr = engine->advance_day();
        rep.settlement_transfers += dr.transfers.size();
        rep.trades_carried += dr.carried.size();
        rep.trades_cancelled += dr.cancelled.size();
        if (matcher) {
            const NodeSpec& m = matcher_spec();
            for (const auto& t : dr.transfers)
                pending_txs.push_back(
                    exchange::make_settlement_tx(m.keys, next_record_seq++, t));
        }
        matcher = elect(ev.number);
        if (matcher) rep.matchers[ev.number] = *matcher;
    }

    void on_tamper(const Event& ev)
    {
        Chain& c = chains[ev.node];
        if (ev.number > c.tip_height()) return; // nothing there yet
        Block& b = c.blocks[ev.number];
        for (auto& tx : b.txs) {
            if (tx.kind == TxKind::Marker && !tx.payload.empty()) {
                tx.payload[0] ^= 0xff;
                ++rep.tampers_applied;
                return;
            }
        }
        if (!b.txs.empty() && !b.txs[0].payload.empty()) {
            b.txs[0].payload[0] ^= 0xff;
            ++rep.tampers_applied;
        }
    }

    void on_audit(const Event& ev)
    {
        for (size_t i = 0; i < chains.size(); ++i) {
            AuditFinding f;
            f.at = ev.time;
            f.node = sc.nodes[i].id;
            f.report = ledger::locate_tamper(chains[i], cfg);
            rep.audits.push_back(std::move(f));
        }
    }

    void loop()
    {
        while (!q.empty()) {
            Event ev = q.top();
            q.pop();
            switch (ev.kind) {
            case EvKind::FindBlock: on_find(ev); break;
            case EvKind::ProduceSlot: on_slot(ev); break;
            case EvKind::Deliver: on_deliver(ev); break;
            case EvKind::OrderArrive: on_order(ev); break;
            case EvKind::DayRoll: on_dayroll(ev); break;
            case EvKind::Tamper: on_tamper(ev); break;
            case EvKind::Audit: on_audit(ev); break;
            }
        }
    }

    size_t finalize()
    {
        const size_t canonical = best_index();
        const Chain& canon = chains[canonical];
        rep.final_height = canon.tip_height();
        rep.tip_hash = canon.tip_hash().hex();
        rep.all_agree = true;
        for (size_t i = 0; i < chains.size(); ++i) {
            if (chains[i].tip_hash() != canon.tip_hash()) rep.all_agree = false;
            rep.node_tips[sc.nodes[i].id] = chains[i].tip_hash().hex();
        }
        rep.final_chain_valid = ledger::validate_chain(canon, cfg).valid;
        rep.blocks_orphaned = rep.blocks_produced - rep.final_height;
        for (size_t i = 0; i < sc.nodes.size(); ++i)
            rep.produced_by[sc.nodes[i].id] = produced[i];

        if (rep.final_height >= 1) {
            const uint32_t t0 = canon.blocks.front().header.timestamp;
            const uint32_t t1 = canon.blocks.back().header.timestamp;
            rep.mean_interval = double(t1 - t0) / rep.final_height;
            const uint32_t W = cfg.retarget_window;
            for (uint32_t w = 0; uint64_t(w + 1) * W <= rep.final_height; ++w) {
                const uint32_t a = canon.blocks[size_t(w) * W].header.timestamp;
                const uint32_t b =
                    canon.blocks[size_t(w + 1) * W].header.timestamp;
                rep.window_means.push_back(double(b - a) / W);
            }
        }

        if (engine) {
            int64_t cash_expected = 0;
            std::map<std::string, int64_t> sec_expected;
            for (const auto& t : sc.traders) {
                cash_expected += int64_t(t.cash);
                for (const auto& [symbol, qty] : t.holdings)
                    sec_expected[symbol] += int64_t(qty);
            }
            rep.conservation_ok =
                engine->total(ledger::Asset::cash()) == cash_expected;
            for (const auto& [symbol, qty] : sec_expected)
                if (engine->total(ledger::Asset::security(symbol)) != qty)
                    rep.conservation_ok = false;
            rep.negative_balances = engine->any_negative_balance();
            rep.obligations_pending = engine->pending().size();
        }

        if (sc.double_spend) {
            DoubleSpendParams p;
            p.q = sc.double_spend->q;
            p.z = sc.double_spend->z;
            p.runs = sc.double_spend->runs;
            p.seed = mix_seed(sc.rng_seed, 0xa77acc);
            rep.double_spend = simulate_double_spend(p);
        }

        if (sc.forgery && rep.final_height >= 1) {
            const uint32_t h =
                std::min(sc.forgery->tamper_height, rep.final_height);
            for (uint32_t v = 0; v < sc.forgery->trials; ++v) {
                const ForgeryOutcome o =
                    run_forgery(canon, cfg, h, sc.forgery->strategy, v);
                ForgeryTrial t;
                t.trial = v;
                t.strategy = o.strategy;
                t.tamper_height = o.tamper_height;
                t.internally_valid = o.internally_valid;
                t.caught = o.caught;
                t.reason = o.audit.reason;
                t.audit_height = o.audit.height;
                t.cross = o.cross;
                rep.forgeries.push_back(t);
            }
        }
        return canonical;
    }
};

} // namespace

Simulation::Simulation(Scenario scenario) : sc_(std::move(scenario)) {}

SimReport Simulation::run()
{
    Runner r(sc_);
    r.seed_events();
    r.loop();
    canonical_ = r.finalize();
    chains_ = std::move(r.chains);
    return std::move(r.rep);
}

std::string SimReport::to_json() const
{
    json j;
    j["scenario"] = scenario;
    j["seed"] = seed;
    j["duration"] = duration;

    json chain = json::object();
    chain["height"] = final_height;
    chain["tip"] = tip_hash;
    chain["all_agree"] = all_agree;
    chain["valid"] = final_chain_valid;
    json tips = json::object();
    for (const auto& [node, tip] : node_tips) tips[node] = tip;
    chain["node_tips"] = tips;
    j["chain"] = chain;

    json blocks = json::object();
    blocks["produced"] = blocks_produced;
    blocks["orphaned"] = blocks_orphaned;
    blocks["missed_slots"] = missed_slots;
    json per = json::object();
    for (const auto& [id, n] : produced_by) per[id] = n;
    blocks["per_node"] = per;
    j["blocks"] = blocks;

    json timing = json::object();
    timing["target_interval"] = target_interval;
    timing["mean_interval"] = mean_interval;
    timing["window_means"] = window_means;
    j["timing"] = timing;

    if (trading) {
        json tr = json::object();
        tr["orders_submitted"] = orders_submitted;
        tr["orders_accepted"] = orders_accepted;
        tr["orders_rejected"] = orders_rejected;
        tr["trades_executed"] = trades_executed;
        tr["trade_records_booked"] = trade_records_booked;
        tr["settlement_transfers"] = settlement_transfers;
        tr["settlements_booked"] = settlements_booked;
        tr["trades_carried"] = trades_carried;
        tr["trades_cancelled"] = trades_cancelled;
        tr["obligations_pending"] = obligations_pending;
        tr["negative_balances"] = negative_balances;
        tr["conservation_ok"] = conservation_ok;
        json ms = json::object();
        for (const auto& [day, id] : matchers) ms[std::to_string(day)] = id;
        tr["matchers"] = ms;
        j["trading"] = tr;
    }

    if (tampers_applied > 0 || !audits.empty()) {
        j["tampers_applied"] = tampers_applied;
        json arr = json::array();
        for (const auto& f : audits) {
            json a = json::object();
            a["at"] = f.at;
            a["node"] = f.node;
            a["tampered"] = f.report.tampered;
            a["height"] = f.report.height;
            a["invalidated"] = f.report.invalidated;
            a["reason"] = ledger::to_string(f.report.reason);
            arr.push_back(a);
        }
        j["audits"] = arr;
    }

    if (double_spend) {
        json d = json::object();
        d["q"] = double_spend->params.q;
        d["z"] = double_spend->params.z;
        d["runs"] = double_spend->params.runs;
        d["successes"] = double_spend->successes;
        d["rate"] = double_spend->rate;
        j["double_spend"] = d;
    }

    if (!forgeries.empty()) {
        json arr = json::array();
        for (const auto& t : forgeries) {
            json f = json::object();
            f["trial"] = t.trial;
            f["strategy"] = to_string(t.strategy);
            f["tamper_height"] = t.tamper_height;
            f["internally_valid"] = t.internally_valid;
            f["caught"] = t.caught;
            f["audit_reason"] = ledger::to_string(t.reason);
            f["audit_height"] = t.audit_height;
            f["cross_check"] = ledger::to_string(t.cross);
            arr.push_back(f);
        }
        j["forgery"] = arr;
    }

    return j.dump(2) + "\n";
}

} // namespace hldg::netsim
