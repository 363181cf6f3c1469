// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include <doctest.h>

#include <random>

#include "hldg/exchange/clearing.hpp"
#include "hldg/exchange/conflict.hpp"
#include "hldg/exchange/engine.hpp"
#include "hldg/ledger/validate.hpp"
#include "support/builders.hpp"

using namespace hldg::ledger;
using namespace hldg::exchange;
using namespace hldg::testutil;
using hldg::consensus::address_of;

namespace {

const Asset kCash = Asset::cash();
const Asset kAcme = Asset::security("ACME");

struct Venue {
    ExchangeEngine engine;
    hldg::consensus::KeyPair alice = test_keys("alice");
    hldg::consensus::KeyPair bob = test_keys("bob");
    hldg::consensus::KeyPair carol = test_keys("carol");
    Address a = address_of(alice.public_key);
    Address b = address_of(bob.public_key);
    Address c = address_of(carol.public_key);
    uint64_t seq_a = 0, seq_b = 0, seq_c = 0;

    explicit Venue(SettlementMode mode, uint32_t days = 2,
                   FailurePolicy policy = FailurePolicy::Carry)
        : engine(mode, days, policy) {
        engine.credit(a, kCash, 10'000);
        engine.credit(b, kCash, 10'000);
        engine.credit(c, kCash, 10'000);
        engine.credit(a, kAcme, 100);
        engine.credit(b, kAcme, 100);
        engine.credit(c, kAcme, 100);
    }

    ExchangeEngine::SubmitResult buy(const hldg::consensus::KeyPair& kp, uint64_t& seq,
                                     uint64_t qty, uint64_t price) {
        return engine.submit_order(make_order(kp, Side::Buy, "ACME", qty, price, seq++));
    }
    ExchangeEngine::SubmitResult sell(const hldg::consensus::KeyPair& kp, uint64_t& seq,
                                      uint64_t qty, uint64_t price) {
        return engine.submit_order(make_order(kp, Side::Sell, "ACME", qty, price, seq++));
    }

    void check_conservation() {
        CHECK(engine.total(kCash) == 30'000);
        CHECK(engine.total(kAcme) == 300);
    }
};

} // namespace

TEST_CASE("orders round trip and verify") {
    const auto kp = test_keys("trader");
    Order o = make_order(kp, Side::Sell, "ACME", 10, 55, 3);
    CHECK(verify_order_signature(o));

    const Bytes enc = o.encode();
    Reader r(enc);
    CHECK(Order::decode(r) == o);
    CHECK(r.at_end());

    Order forged = o;
    forged.qty = 11;
    CHECK(!verify_order_signature(forged));
    CHECK(forged.id() != o.id());

    Order wrong_owner = o;
    wrong_owner.trader = address_of(test_keys("other").public_key);
    CHECK(!verify_order_signature(wrong_owner));
}

TEST_CASE("matching respects price-time priority at the resting price") {
    Venue v(SettlementMode::Instant);

    // Two asks at different prices; the cheaper one trades first.
    CHECK(v.sell(v.bob, v.seq_b, 10, 51).accepted);
    CHECK(v.sell(v.carol, v.seq_c, 10, 50).accepted);
    auto r = v.buy(v.alice, v.seq_a, 15, 52);
    REQUIRE(r.accepted);
    REQUIRE(r.trades.size() == 2);
    CHECK(r.trades[0].seller == v.c);
    CHECK(r.trades[0].price == 50); // maker price, not the 52 limit
    CHECK(r.trades[0].qty == 10);
    CHECK(r.trades[1].seller == v.b);
    CHECK(r.trades[1].price == 51);
    CHECK(r.trades[1].qty == 5);

    // Equal prices: earlier arrival first.
    Venue w(SettlementMode::Instant);
    CHECK(w.sell(w.bob, w.seq_b, 10, 50).accepted);
    CHECK(w.sell(w.carol, w.seq_c, 10, 50).accepted);
    auto r2 = w.buy(w.alice, w.seq_a, 10, 50);
    REQUIRE(r2.trades.size() == 1);
    CHECK(r2.trades[0].seller == w.b);

    // Non-crossing order rests.
    Venue x(SettlementMode::Instant);
    CHECK(x.buy(x.alice, x.seq_a, 10, 40).accepted);
    auto r3 = x.sell(x.bob, x.seq_b, 10, 45);
    CHECK(r3.accepted);
    CHECK(r3.trades.empty());
    CHECK(x.engine.book("ACME").bids().size() == 1);
    CHECK(x.engine.book("ACME").asks().size() == 1);
}

TEST_CASE("instant mode settles delivery versus payment immediately") {
    Venue v(SettlementMode::Instant);
    CHECK(v.sell(v.bob, v.seq_b, 10, 50).accepted);
    auto r = v.buy(v.alice, v.seq_a, 10, 50);
    REQUIRE(r.accepted);
    REQUIRE(r.trades.size() == 1);

    CHECK(v.engine.account(v.a).cash == 9'500);
    CHECK(v.engine.account(v.a).holding("ACME") == 110);
    CHECK(v.engine.account(v.b).cash == 10'500);
    CHECK(v.engine.account(v.b).holding("ACME") == 90);
    CHECK(v.engine.account(v.a).reserved_cash == 0);
    CHECK(v.engine.account(v.b).reserved_holding("ACME") == 0);
    CHECK(v.engine.pending().empty());
    v.check_conservation();
    CHECK(!v.engine.any_negative_balance());
}

TEST_CASE("instant mode refuses orders beyond available balance") {
    Venue v(SettlementMode::Instant);

    // 10'000 cash covers 200 shares at 50 but no more.
    CHECK(v.buy(v.alice, v.seq_a, 200, 50).accepted);
    auto r = v.buy(v.alice, v.seq_a, 1, 50);
    CHECK(!r.accepted);
    CHECK(r.reason == "insufficient cash");

    // Holdings: 100 on hand, resting sell reserves them.
    CHECK(v.sell(v.bob, v.seq_b, 100, 60).accepted);
    auto r2 = v.sell(v.bob, v.seq_b, 1, 60);
    CHECK(!r2.accepted);
    CHECK(r2.reason == "insufficient holdings");

    // A fill frees the buyer's over-reservation at their limit price.
    Venue w(SettlementMode::Instant);
    CHECK(w.buy(w.alice, w.seq_a, 100, 100).accepted); // reserves the full 10'000
    CHECK(w.engine.account(w.a).available_cash() == 0);
    CHECK(w.sell(w.bob, w.seq_b, 100, 100).accepted);
    CHECK(w.engine.account(w.a).available_cash() == 0); // spent, not stuck
    CHECK(w.engine.account(w.a).cash == 0);
    CHECK(w.engine.account(w.a).holding("ACME") == 200);
    w.check_conservation();
}

TEST_CASE("instant settlement is atomic when invoked bare") {
    Accounts accounts;
    const Address buyer = address_of(test_keys("buyer").public_key);
    const Address seller = address_of(test_keys("seller").public_key);
    accounts[buyer].cash = 100;
    accounts[seller].holdings["ACME"] = 10;

    Trade t;
    t.buyer = buyer;
    t.seller = seller;
    t.security = "ACME";
    t.qty = 10;
    t.price = 50; // notional 500 > 100 cash

    CHECK(!settle_instant(accounts, t));
    CHECK(accounts[buyer].cash == 100);           // neither leg moved
    CHECK(accounts[seller].holdings["ACME"] == 10);
    CHECK(accounts[buyer].holding("ACME") == 0);
    CHECK(accounts[seller].cash == 0);

    t.price = 10; // notional 100: exactly affordable
    CHECK(settle_instant(accounts, t));
    CHECK(accounts[buyer].cash == 0);
    CHECK(accounts[buyer].holding("ACME") == 10);
    CHECK(accounts[seller].cash == 100);
    CHECK(accounts[seller].holding("ACME") == 0);

    // Seller short of stock: also untouched.
    Trade t2 = t;
    t2.qty = 99;
    t2.price = 1;
    CHECK(!settle_instant(accounts, t2));
    CHECK(accounts[seller].holding("ACME") == 0);
}

TEST_CASE("cycle mode defers both legs to the due day") {
    Venue v(SettlementMode::Cycle, 2);
    CHECK(v.sell(v.bob, v.seq_b, 10, 50).accepted);
    REQUIRE(v.buy(v.alice, v.seq_a, 10, 50).trades.size() == 1);

    // Nothing moves at the trade.
    CHECK(v.engine.account(v.a).cash == 10'000);
    CHECK(v.engine.account(v.b).holding("ACME") == 100);
    CHECK(v.engine.pending().size() == 2);

    auto d1 = v.engine.advance_day();
    CHECK(d1.transfers.empty()); // due on day 2, not day 1
    auto d2 = v.engine.advance_day();
    REQUIRE(d2.transfers.size() == 2);

    CHECK(v.engine.account(v.a).cash == 9'500);
    CHECK(v.engine.account(v.a).holding("ACME") == 110);
    CHECK(v.engine.account(v.b).cash == 10'500);
    CHECK(v.engine.account(v.b).holding("ACME") == 90);
    CHECK(v.engine.pending().empty());
    v.check_conservation();
}

TEST_CASE("cycle netting collapses a delivery chain to one transfer") {
    Venue v(SettlementMode::Cycle, 1);

    // A sells 10 to B at 50, B sells the same 10 on to C at 55.
    CHECK(v.buy(v.bob, v.seq_b, 10, 50).accepted);
    REQUIRE(v.sell(v.alice, v.seq_a, 10, 50).trades.size() == 1);
    CHECK(v.buy(v.carol, v.seq_c, 10, 55).accepted);
    REQUIRE(v.sell(v.bob, v.seq_b, 10, 55).trades.size() == 1);

    auto day = v.engine.advance_day();

    // Securities: B nets flat, so the stock moves A -> C directly.
    std::vector<SettlementTransfer> stock;
    for (const auto& t : day.transfers)
        if (t.asset == kAcme) stock.push_back(t);
    REQUIRE(stock.size() == 1);
    CHECK(stock[0].from == v.a);
    CHECK(stock[0].to == v.c);
    CHECK(stock[0].amount == 10);

    // B keeps only the 50-point spread; each side pays/receives its net.
    CHECK(v.engine.account(v.a).cash == 10'500);
    CHECK(v.engine.account(v.b).cash == 10'050);
    CHECK(v.engine.account(v.c).cash == 9'450);
    CHECK(v.engine.account(v.a).holding("ACME") == 90);
    CHECK(v.engine.account(v.b).holding("ACME") == 100);
    CHECK(v.engine.account(v.c).holding("ACME") == 110);
    v.check_conservation();
}

TEST_CASE("insolvent buyer's trades carry to the next day") {
    Venue v(SettlementMode::Cycle, 1, FailurePolicy::Carry);

    // Alice empties her cash account after trading on credit.
    CHECK(v.sell(v.bob, v.seq_b, 10, 600).accepted);
    REQUIRE(v.buy(v.alice, v.seq_a, 10, 600).trades.size() == 1); // owes 6'000
    Transaction drain = make_transfer(v.alice, v.c, kCash, 9'000, 100);
    CHECK(v.engine.submit_transfer(drain).accepted); // 1'000 left < 6'000 owed

    auto day = v.engine.advance_day();
    CHECK(day.transfers.empty());
    REQUIRE(day.carried.size() == 1);
    CHECK(v.engine.pending().size() == 2); // both legs still alive
    CHECK(!v.engine.any_negative_balance());

    // Refunded next day, the carried trade clears.
    Transaction refund = make_transfer(v.carol, v.a, kCash, 9'000, 200);
    CHECK(v.engine.submit_transfer(refund).accepted);
    auto day2 = v.engine.advance_day();
    CHECK(day2.carried.empty());
    REQUIRE(day2.transfers.size() == 2);
    CHECK(v.engine.account(v.a).holding("ACME") == 110);
    CHECK(v.engine.pending().empty());
    v.check_conservation();
}

TEST_CASE("cancel policy drops a defaulter's trades and strands nobody") {
    Venue v(SettlementMode::Cycle, 1, FailurePolicy::Cancel);

    // Alice buys from Bob, Bob uses the incoming cash to buy from Carol.
    CHECK(v.sell(v.bob, v.seq_b, 10, 900).accepted);
    REQUIRE(v.buy(v.alice, v.seq_a, 10, 900).trades.size() == 1); // 9'000 due
    CHECK(v.sell(v.carol, v.seq_c, 10, 1'800).accepted);
    REQUIRE(v.buy(v.bob, v.seq_b, 10, 1'800).trades.size() == 1); // 18'000 due

    // Alice defaults; without her 9'000 Bob cannot fund 18'000 either, so
    // the default cascades and both trades die.
    Transaction drain = make_transfer(v.alice, v.c, kCash, 9'500, 100);
    CHECK(v.engine.submit_transfer(drain).accepted);

    auto day = v.engine.advance_day();
    CHECK(day.cancelled.size() == 2);
    CHECK(day.carried.empty());
    CHECK(day.transfers.empty());
    CHECK(v.engine.pending().empty()); // cancelled, not deferred
    CHECK(!v.engine.any_negative_balance());
    v.check_conservation();
}

TEST_CASE("sequence reuse is rejected as a conflict") {
    Venue v(SettlementMode::Instant);

    Order first = make_order(v.alice, Side::Buy, "ACME", 5, 50, 7);
    Order second = make_order(v.alice, Side::Buy, "ACME", 5, 60, 7); // same seq
    CHECK(v.engine.submit_order(first).accepted);

    auto dup = v.engine.submit_order(first);
    CHECK(!dup.accepted);
    CHECK(dup.reason == "duplicate order");

    auto conflict = v.engine.submit_order(second);
    CHECK(!conflict.accepted);
    CHECK(conflict.reason == "sequence conflict");

    // Same story for transfers.
    Transaction t1 = make_transfer(v.alice, v.b, kCash, 10, 3);
    Transaction t2 = make_transfer(v.alice, v.c, kCash, 10, 3);
    CHECK(v.engine.submit_transfer(t1).accepted);
    CHECK(!v.engine.submit_transfer(t1).accepted);
    auto r = v.engine.submit_transfer(t2);
    CHECK(!r.accepted);
    CHECK(r.reason == "sequence conflict");
}

TEST_CASE("conflict scan groups slot reuse and ignores retransmits") {
    const auto alice = test_keys("alice");
    const auto bob = test_keys("bob");
    const Address addr_b = address_of(bob.public_key);
    const Address addr_c = address_of(test_keys("carol").public_key);

    std::vector<Transaction> pool;
    pool.push_back(make_transfer(alice, addr_b, kCash, 10, 0)); // 0
    pool.push_back(make_transfer(alice, addr_c, kCash, 10, 0)); // 1: conflicts with 0
    pool.push_back(pool[0]);                                    // 2: retransmit of 0
    pool.push_back(make_transfer(alice, addr_b, kCash, 5, 1));  // 3: clean
    pool.push_back(make_transfer(bob, addr_c, kCash, 7, 0));    // 4: clean (other actor)

    auto report = detect_conflict(std::span<const Transaction>(pool));
    REQUIRE(report.groups.size() == 1);
    CHECK(report.groups[0].actor == address_of(alice.public_key));
    CHECK(report.groups[0].seq == 0);
    CHECK(report.groups[0].members == std::vector<size_t>{0, 1, 2});

    // Orders: same semantics.
    std::vector<Order> orders;
    orders.push_back(make_order(alice, Side::Buy, "ACME", 5, 50, 9));
    orders.push_back(make_order(alice, Side::Buy, "ACME", 5, 51, 9));
    orders.push_back(make_order(alice, Side::Buy, "ACME", 5, 50, 10));
    orders.push_back(orders[0]);
    auto oreport = detect_conflict(std::span<const Order>(orders));
    REQUIRE(oreport.groups.size() == 1);
    CHECK(oreport.groups[0].members == std::vector<size_t>{0, 1, 3});

    std::vector<Transaction> clean{pool[3], pool[4]};
    CHECK(detect_conflict(std::span<const Transaction>(clean)).clean());
}

TEST_CASE("trade records and settlement instructions book and parse") {
    const auto matcher = test_keys("matcher");
    Trade t;
    t.seq = 42;
    t.buyer = address_of(test_keys("alice").public_key);
    t.seller = address_of(test_keys("bob").public_key);
    t.security = "ACME";
    t.qty = 10;
    t.price = 50;
    t.trade_day = 3;

    uint64_t seq = 0;
    auto post = post_trades_to_ledger("m1", "m1", matcher, seq,
                                      std::span<const Trade>(&t, 1));
    REQUIRE(post.accepted);
    REQUIRE(post.txs.size() == 1);
    CHECK(verify_tx_signature(post.txs[0]));
    auto back = parse_trade_record(post.txs[0]);
    REQUIRE(back.has_value());
    CHECK(*back == t);

    // The seat check: a poster who lost the election is refused.
    uint64_t seq2 = 0;
    auto rejected = post_trades_to_ledger("m2", "m1", matcher, seq2,
                                          std::span<const Trade>(&t, 1));
    CHECK(!rejected.accepted);
    CHECK(rejected.txs.empty());

    SettlementTransfer st{t.seller, t.buyer, Asset::security("ACME"), 10};
    auto stx = make_settlement_tx(matcher, 7, st);
    CHECK(verify_tx_signature(stx));
    auto sback = parse_settlement_tx(stx);
    REQUIRE(sback.has_value());
    CHECK(*sback == st);
    CHECK(!parse_trade_record(stx).has_value());
}

TEST_CASE("randomized trading conserves assets in both modes") {
    for (const auto mode : {SettlementMode::Instant, SettlementMode::Cycle}) {
        CAPTURE(static_cast<int>(mode));
        ExchangeEngine engine(mode, 2, FailurePolicy::Carry);

        std::vector<hldg::consensus::KeyPair> keys;
        std::vector<Address> addrs;
        for (int i = 0; i < 6; ++i) {
            keys.push_back(test_keys("t" + std::to_string(i)));
            addrs.push_back(address_of(keys.back().public_key));
            engine.credit(addrs.back(), kCash, 50'000);
            engine.credit(addrs.back(), kAcme, 500);
            engine.credit(addrs.back(), Asset::security("GLOB"), 500);
        }
        const int64_t cash0 = engine.total(kCash);
        const int64_t acme0 = engine.total(kAcme);
        const int64_t glob0 = engine.total(Asset::security("GLOB"));

        std::mt19937_64 rng(777);
        std::vector<uint64_t> seqs(6, 0);
        int accepted = 0;
        for (int step = 0; step < 2'000; ++step) {
            const size_t who = rng() % 6;
            const Side side = rng() % 2 ? Side::Buy : Side::Sell;
            const std::string sym = rng() % 2 ? "ACME" : "GLOB";
            const uint64_t qty = 1 + rng() % 20;
            const uint64_t price = 40 + rng() % 21;
            auto r = engine.submit_order(
                make_order(keys[who], side, sym, qty, price, seqs[who]++));
            if (r.accepted) ++accepted;
            if (step % 200 == 199) engine.advance_day();
        }
        for (int i = 0; i < 5; ++i) engine.advance_day(); // drain obligations

        CHECK(accepted > 1'000); // the venue actually traded
        CHECK(engine.total(kCash) == cash0);
        CHECK(engine.total(kAcme) == acme0);
        CHECK(engine.total(Asset::security("GLOB")) == glob0);
        if (mode == SettlementMode::Instant) {
            CHECK(!engine.any_negative_balance());
            CHECK(engine.pending().empty());
        }
    }
}
