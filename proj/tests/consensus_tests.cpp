// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include <doctest.h>

#include <algorithm>
#include <set>

#include "hldg/consensus/difficulty.hpp"
#include "hldg/consensus/fork_choice.hpp"
#include "hldg/consensus/keys.hpp"
#include "hldg/consensus/miner.hpp"
#include "hldg/consensus/rng.hpp"
#include "hldg/consensus/round_robin.hpp"
#include "hldg/consensus/stake.hpp"
#include "hldg/ledger/validate.hpp"
#include "support/builders.hpp"

using namespace hldg::ledger;
using namespace hldg::consensus;
using namespace hldg::testutil;

TEST_CASE("keypairs are deterministic in the seed") {
    const auto a1 = test_keys("alice");
    const auto a2 = test_keys("alice");
    const auto b = test_keys("bob");
    CHECK(a1.public_key == a2.public_key);
    CHECK(a1.secret_key == a2.secret_key);
    CHECK(a1.public_key != b.public_key);
    CHECK(a1.public_key.size() == kPublicKeyLen);
    CHECK(a1.secret_key.size() == kSecretKeyLen);
}

TEST_CASE("signatures verify and tampering breaks them") {
    const auto kp = test_keys("signer");
    const Bytes msg = to_bytes("pay bob 10");
    Bytes sig = sign(kp.secret_key, msg);
    CHECK(sig.size() == kSignatureLen);
    CHECK(verify(kp.public_key, msg, sig));

    Bytes flipped = sig;
    flipped[10] ^= 1;
    CHECK(!verify(kp.public_key, msg, flipped));

    const Bytes other = to_bytes("pay bob 11");
    CHECK(!verify(kp.public_key, other, sig));

    const auto kp2 = test_keys("someone-else");
    CHECK(!verify(kp2.public_key, msg, sig));

    // Malformed inputs are refusals, not crashes.
    CHECK(!verify(Bytes(5, 1), msg, sig));
    CHECK(!verify(kp.public_key, msg, Bytes(5, 1)));
    CHECK(!verify(Bytes{}, msg, Bytes{}));
}

TEST_CASE("key files round trip") {
    const auto kp = test_keys("disk");
    const std::string text = encode_key_file(kp);
    auto back = parse_key_file(text);
    REQUIRE(back.has_value());
    CHECK(back->secret_key == kp.secret_key);
    CHECK(back->public_key == kp.public_key);

    CHECK(!parse_key_file("deadbeef"));
    CHECK(!parse_key_file(""));
    // Unknown scheme byte.
    std::string alien = text;
    alien[0] = '7';
    alien[1] = '7';
    CHECK(!parse_key_file(alien));
}

TEST_CASE("compact difficulty expands and compresses") {
    // mantissa * 256^(exp-3)
    CHECK(expand_bits(0x03000001) == 1);
    CHECK(expand_bits(0x04000001) == 256);
    CHECK(expand_bits(0x01000001) == 0); // shifted out
    CHECK(expand_bits(0x207fffff) == (uint256(0x7fffff) << (8 * 29)));
    CHECK(expand_bits(0x1d00ffff) == (uint256(0xffff) << (8 * 26)));
    CHECK(expand_bits(0) == 0);

    CHECK(compress_target(expand_bits(0x207fffff)) == 0x207fffff);
    CHECK(compress_target(expand_bits(0x1d00ffff)) == 0x1d00ffff);
    CHECK(compress_target(uint256(1)) == 0x01010000);
    // Mantissa top bit must stay clear: 0x800000 re-normalizes.
    CHECK(compress_target(uint256(0x800000)) == 0x04008000);
    CHECK(compress_target(uint256(0)) == 0);

    // Round trip across assorted magnitudes loses at most mantissa precision.
    for (uint32_t bits : {0x207fffffu, 0x1d00ffffu, 0x1b0404cbu, 0x181bc330u}) {
        CHECK(compress_target(expand_bits(bits)) == bits);
    }
}

TEST_CASE("block work inverts the target") {
    CHECK(block_work(0x207fffff) == 2); // target 2^255 - 2^232: just under half
    CHECK(block_work(0) == 0);
    // Halving the target doubles the work.
    const uint256 w1 = block_work(0x1d00ffff);
    const uint256 w2 = block_work(0x1c7fff80); // exactly half the 0x1d00ffff target
    CHECK(w2 / w1 == 2);
}

TEST_CASE("proof of work check uses big-endian comparison") {
    BlockHeader h;
    h.bits = 0x207fffff;
    // At this easy target roughly half of nonces pass; nonce 0 happens to.
    auto mined = pow_mine(h, 1000);
    REQUIRE(mined.found);
    CHECK(check_pow(mined.header));
    CHECK(mined.hash == block_hash(mined.header));

    // An unminable target never validates.
    BlockHeader dead;
    dead.bits = 0;
    CHECK(!check_pow(dead));
}

TEST_CASE("miner scans deterministically and respects budget") {
    BlockHeader h;
    h.bits = 0x207fffff;
    const auto a = pow_mine(h);
    const auto b = pow_mine(h);
    REQUIRE(a.found);
    CHECK(a.header == b.header);
    CHECK(a.iterations == b.iterations);

    // A hard target with a tiny budget gives up without finding.
    BlockHeader hard;
    hard.bits = 0x03000001;
    const auto c = pow_mine(hard, 10);
    CHECK(!c.found);
    CHECK(c.iterations == 10);
}

TEST_CASE("retarget tracks the measured window and clamps") {
    ChainConfig cfg = pow_config(0x1d00ffff, 100, 10);
    const uint256 old_target = expand_bits(0x1d00ffff);

    // On-pace window: target unchanged.
    std::vector<uint32_t> stamps;
    for (uint32_t i = 0; i <= 10; ++i) stamps.push_back(1000 + i * 100);
    auto same = retarget(0x1d00ffff, stamps, cfg);
    REQUIRE(same.has_value());
    CHECK(*same == 0x1d00ffff);

    // Blocks twice as fast: target halves (difficulty doubles).
    stamps.clear();
    for (uint32_t i = 0; i <= 10; ++i) stamps.push_back(1000 + i * 50);
    auto faster = retarget(0x1d00ffff, stamps, cfg);
    REQUIRE(faster.has_value());
    CHECK(expand_bits(*faster) * 2 <= old_target);
    CHECK(expand_bits(*faster) * 2 >= old_target - (old_target >> 8));

    // Stalled window: clamped to at most 4x easier.
    stamps.clear();
    for (uint32_t i = 0; i <= 10; ++i) stamps.push_back(1000 + i * 100000);
    auto capped = retarget(0x1d00ffff, stamps, cfg);
    REQUIRE(capped.has_value());
    CHECK(expand_bits(*capped) <= old_target * 4);
    CHECK(expand_bits(*capped) >= old_target * 4 - (old_target >> 6));

    // Wrong window size or reversed stamps are refused.
    RetargetError err;
    const std::vector<uint32_t> short_window{1, 2, 3};
    CHECK(!retarget(0x1d00ffff, short_window, cfg, &err));
    CHECK(!err.reason.empty());
    std::vector<uint32_t> reversed(11);
    for (uint32_t i = 0; i <= 10; ++i) reversed[i] = 2000 - i * 100;
    CHECK(!retarget(0x1d00ffff, reversed, cfg));
}

TEST_CASE("expected bits follow the retarget schedule") {
    ChainConfig cfg = pow_config(0x207fffff, 100, 4);
    // Blocks arriving 4x too fast for two windows.
    Chain chain = build_pow_chain(cfg, 9, /*step=*/25);

    CHECK(hldg::consensus::expected_bits(chain.blocks, 1, cfg) == cfg.initial_bits);
    CHECK(hldg::consensus::expected_bits(chain.blocks, 4, cfg) == cfg.initial_bits);
    // First retarget at height 5; it saw a 4x-fast window.
    const uint32_t bits5 = hldg::consensus::expected_bits(chain.blocks, 5, cfg);
    CHECK(bits5 != cfg.initial_bits);
    CHECK(expand_bits(bits5) <= expand_bits(cfg.initial_bits) / 4 + 1);
    // Stable within the window.
    CHECK(hldg::consensus::expected_bits(chain.blocks, 6, cfg) == bits5);
    CHECK(hldg::consensus::expected_bits(chain.blocks, 8, cfg) == bits5);
    // And the mined chain satisfies its own schedule.
    CHECK(validate_chain(chain, cfg).valid);
}

TEST_CASE("fork choice picks cumulative work, first seen on ties") {
    ChainConfig cfg = pow_config();
    Chain a = build_pow_chain(cfg, 3);
    Chain b = a;
    grow_pow_chain(b, cfg, 2); // heavier

    std::vector<Chain> forks{a, b};
    CHECK(*fork_choice(forks) == 1);

    // Equal-length, equal-work rivals: the incumbent (index 0) stays.
    Chain c = a;
    Chain d = a;
    d.blocks.pop_back();
    grow_pow_chain(d, cfg, 1, 37); // same schedule, different timestamps
    CHECK(chain_work(c) == chain_work(d));
    CHECK(c.tip_hash() != d.tip_hash());
    std::vector<Chain> rivals{c, d};
    CHECK(*fork_choice(rivals) == 0);

    CHECK(!fork_choice({}));
}

TEST_CASE("digest rng is deterministic and rejection sampling is unbiased enough") {
    DigestRng r1(sha256("seed"));
    DigestRng r2(sha256("seed"));
    DigestRng r3(sha256("other"));
    std::vector<uint64_t> a, b;
    for (int i = 0; i < 16; ++i) {
        a.push_back(r1.next_u64());
        b.push_back(r2.next_u64());
    }
    CHECK(a == b);
    CHECK(r3.next_u64() != a[0]);

    DigestRng r(sha256("bounds"));
    std::set<uint64_t> seen;
    for (int i = 0; i < 3000; ++i) {
        const uint64_t v = r.bounded(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7); // every residue reached
    CHECK(r.bounded(0) == 0);
    CHECK(r.bounded(1) == 0);
}

TEST_CASE("writer shuffle is a seed-keyed permutation") {
    std::vector<NodeId> writers{"v0", "v1", "v2", "v3", "v4"};
    const auto p1 = shuffle_writers(writers, sha256("epoch-seed"));
    const auto p2 = shuffle_writers(writers, sha256("epoch-seed"));
    CHECK(p1 == p2);

    auto sorted = p1;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == writers);

    // Roster order in the config must not matter.
    auto scrambled = writers;
    std::swap(scrambled[0], scrambled[4]);
    CHECK(shuffle_writers(scrambled, sha256("epoch-seed")) == p1);

    // Different seeds give different orders for 5! = 120 >> collision odds.
    int diffs = 0;
    for (int i = 0; i < 8; ++i)
        if (shuffle_writers(writers, sha256("s" + std::to_string(i))) != p1) ++diffs;
    CHECK(diffs >= 7);
}

TEST_CASE("rotation schedule covers every writer each epoch") {
    ChainConfig cfg = rr_config(4, 4); // epoch length == writer count
    Chain chain = build_rr_chain(cfg, 12);

    for (uint32_t epoch = 0; epoch < 3; ++epoch) {
        std::set<NodeId> seen;
        for (uint32_t slot = 0; slot < 4; ++slot) {
            const uint32_t h = epoch * 4 + slot + 1;
            REQUIRE(h < chain.height());
            REQUIRE(chain.blocks[h].signer.has_value());
            seen.insert(chain.blocks[h].signer->node);
        }
        CHECK(seen.size() == 4); // each writer exactly once per epoch
    }

    // Epoch seed is the hash of the anchor block, so schedules differ.
    auto s0 = rr_schedule(chain, 1, cfg);
    auto s1 = rr_schedule(chain, 5, cfg);
    REQUIRE(s0.has_value());
    REQUIRE(s1.has_value());
    CHECK(s0->seed != s1->seed);
    CHECK(s0->seed == chain.blocks[0].hash());
    CHECK(s1->seed == chain.blocks[4].hash());
}

TEST_CASE("producer outside its slot is refused") {
    ChainConfig cfg = rr_config(3, 6);
    Chain chain = build_rr_chain(cfg, 2);
    const auto next = scheduled_signer(chain, chain.height(), cfg);
    REQUIRE(next.has_value());
    const NodeId wrong = *next == "v0" ? "v1" : "v0";
    auto res = rr_produce(chain, cfg, wrong, test_keys(wrong),
                          {marker_tx("try")}, 2000);
    CHECK(!res.produced);
    CHECK(res.reason.find("not scheduled") != std::string::npos);
}

TEST_CASE("block signatures bind the whole block") {
    ChainConfig cfg = rr_config(3, 6);
    Chain chain = build_rr_chain(cfg, 4);
    Block b = chain.blocks[2];
    CHECK(verify_block_signature(b, cfg));

    // Changing the body breaks the merkle path to the signed hash.
    Block tampered = b;
    tampered.txs[0].payload.push_back('!');
    tampered.header.merkle_root = *tampered.compute_merkle_root();
    CHECK(!verify_block_signature(tampered, cfg));

    // Claiming another writer's identity fails against the registry.
    Block imposter = b;
    imposter.signer->node = imposter.signer->node == "v0" ? "v1" : "v0";
    CHECK(!verify_block_signature(imposter, cfg));

    Block unsigned_block = b;
    unsigned_block.signer.reset();
    CHECK(!verify_block_signature(unsigned_block, cfg));
}

TEST_CASE("stake election is deterministic and respects stake") {
    ChainConfig cfg = rr_config(3);
    cfg.validators[0].stake = 0;
    cfg.validators[1].stake = 100;
    cfg.validators[2].stake = 0;
    auto only = pos_elect_matcher(sha256("round-1"), cfg);
    REQUIRE(only.has_value());
    CHECK(*only == "v1"); // all stake on one validator

    cfg.validators[0].stake = 50;
    cfg.validators[2].stake = 50;
    const auto e1 = pos_elect_matcher(sha256("round-2"), cfg);
    const auto e2 = pos_elect_matcher(sha256("round-2"), cfg);
    REQUIRE(e1.has_value());
    CHECK(*e1 == *e2);

    // Zero-stake validators never win.
    cfg.validators[1].stake = 0;
    for (int i = 0; i < 50; ++i) {
        auto w = pos_elect_matcher(sha256("draw-" + std::to_string(i)), cfg);
        REQUIRE(w.has_value());
        CHECK(*w != "v1");
    }

    ChainConfig empty = rr_config(2);
    empty.validators[0].stake = 0;
    empty.validators[1].stake = 0;
    CHECK(!pos_elect_matcher(sha256("x"), empty));
}

TEST_CASE("honest chains validate under both consensus modes") {
    ChainConfig rr = rr_config(3, 4);
    Chain rc = build_rr_chain(rr, 10);
    CHECK(validate_chain(rc, rr).valid);
    CHECK(validate_chain(rc).valid); // self-describing path

    ChainConfig pw = pow_config(0x207fffff, 100, 8);
    Chain pc = build_pow_chain(pw, 10);
    CHECK(validate_chain(pc, pw).valid);
    CHECK(validate_chain(pc).valid);
}

TEST_CASE("validation pins a reason to each corruption") {
    ChainConfig cfg = rr_config(3, 4);
    Chain chain = build_rr_chain(cfg, 8);

    SUBCASE("edited payload without rework: body commitment") {
        chain.blocks[5].txs[0].payload.push_back('!');
        auto rep = validate_chain(chain, cfg);
        CHECK(!rep.valid);
        CHECK(rep.first_invalid_height == 5);
        CHECK(rep.reason == ValidationReason::BadMerkle);
    }
    SUBCASE("edited payload with recomputed root: signature") {
        // The writer's signature covers the block hash, so reworking the
        // root without the key dies right at the edited block.
        chain.blocks[5].txs[0].payload.push_back('!');
        chain.blocks[5].header.merkle_root = *chain.blocks[5].compute_merkle_root();
        auto rep = validate_chain(chain, cfg);
        CHECK(!rep.valid);
        CHECK(rep.first_invalid_height == 5);
        CHECK(rep.reason == ValidationReason::BadSignature);
    }
    SUBCASE("broken link") {
        chain.blocks[4].header.prev_hash.bytes[0] ^= 1;
        auto rep = validate_chain(chain, cfg);
        CHECK(!rep.valid);
        CHECK(rep.first_invalid_height == 4);
        CHECK(rep.reason == ValidationReason::BadPrevHash);
    }
    SUBCASE("foreign ruleset") {
        ChainConfig other = rr_config(4, 4);
        auto rep = validate_chain(chain, other);
        CHECK(!rep.valid);
        CHECK(rep.first_invalid_height == 0);
        CHECK(rep.reason == ValidationReason::Malformed);
    }
    SUBCASE("timestamp regression") {
        // Rebuild block 3 honestly but with an earlier stamp than block 2.
        Chain pre;
        pre.blocks.assign(chain.blocks.begin(), chain.blocks.begin() + 3);
        const auto signer = scheduled_signer(pre, 3, cfg);
        REQUIRE(signer.has_value());
        auto res = rr_produce(pre, cfg, *signer, test_keys(*signer),
                              {marker_tx("early")},
                              pre.tip().header.timestamp - 1);
        REQUIRE(res.produced);
        pre.blocks.push_back(res.block);
        auto rep = validate_chain(pre, cfg);
        CHECK(!rep.valid);
        CHECK(rep.first_invalid_height == 3);
        CHECK(rep.reason == ValidationReason::Malformed);
    }
}

TEST_CASE("proof of work corruptions map to bad-pow") {
    ChainConfig cfg = pow_config(0x1f00ffff, 100, 8); // needs real grinding
    Chain chain = build_pow_chain(cfg, 6);

    SUBCASE("nonce not reground after edit") {
        chain.blocks[3].txs[0].payload.push_back('!');
        chain.blocks[3].header.merkle_root = *chain.blocks[3].compute_merkle_root();
        // Relink the suffix so the merkle/pow break is what surfaces.
        for (size_t h = 4; h < chain.blocks.size(); ++h)
            chain.blocks[h].header.prev_hash = chain.blocks[h - 1].hash();
        auto rep = validate_chain(chain, cfg);
        CHECK(!rep.valid);
        CHECK(rep.first_invalid_height == 3);
        CHECK(rep.reason == ValidationReason::BadPow);
    }
    SUBCASE("difficulty off schedule") {
        Chain easy = chain;
        easy.blocks[4].header.bits = 0x207fffff;
        auto mined = pow_mine(easy.blocks[4].header);
        easy.blocks[4].header = mined.header;
        for (size_t h = 5; h < easy.blocks.size(); ++h)
            easy.blocks[h].header.prev_hash = easy.blocks[h - 1].hash();
        auto rep = validate_chain(easy, cfg);
        CHECK(!rep.valid);
        CHECK(rep.first_invalid_height == 4);
        CHECK(rep.reason == ValidationReason::BadPow);
    }
}

TEST_CASE("conflicting spends inside one chain are flagged") {
    ChainConfig cfg = rr_config(3, 4);
    const auto alice = test_keys("alice");
    const auto addr_b = address_of(test_keys("bob").public_key);
    const auto addr_c = address_of(test_keys("carol").public_key);

    // Same (sender, seq), different recipients: a booked double spend.
    std::vector<std::vector<Transaction>> extras(4);
    extras[1].push_back(make_transfer(alice, addr_b, Asset::cash(), 10, 0));
    extras[3].push_back(make_transfer(alice, addr_c, Asset::cash(), 10, 0));

    Chain chain;
    chain.blocks.push_back(make_genesis(cfg));
    grow_rr_chain(chain, cfg, 4, std::move(extras));

    auto rep = validate_chain(chain, cfg);
    CHECK(!rep.valid);
    CHECK(rep.first_invalid_height == 4);
    CHECK(rep.reason == ValidationReason::Conflict);
}

TEST_CASE("tamper location counts invalidated blocks to the tip") {
    ChainConfig cfg = rr_config(3, 4);
    Chain chain = build_rr_chain(cfg, 10);

    auto clean = locate_tamper(chain, cfg);
    CHECK(!clean.tampered);

    chain.blocks[6].txs[0].payload.push_back('!');
    auto rep = locate_tamper(chain, cfg);
    CHECK(rep.tampered);
    CHECK(rep.height == 6);
    CHECK(rep.invalidated == 5); // heights 6..10
    CHECK(rep.reason == ValidationReason::BadMerkle);
}

TEST_CASE("cross check distinguishes match, mismatch, unknown") {
    ChainConfig cfg = rr_config(2, 4);
    Chain chain = build_rr_chain(cfg, 6);

    CHECK(cross_check(chain, 3, chain.blocks[3].hash()) == CrossCheckResult::Match);
    CHECK(cross_check(chain, 3, chain.blocks[4].hash()) == CrossCheckResult::Mismatch);
    CHECK(cross_check(chain, 99, chain.blocks[3].hash()) ==
          CrossCheckResult::HeightUnknown);
}
