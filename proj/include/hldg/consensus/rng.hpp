// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>

#include "hldg/ledger/codec.hpp"
#include "hldg/ledger/sha256.hpp"

namespace hldg::consensus {

/// Deterministic byte stream: sha256(seed || counter_le64) in counter mode,
/// consumed 8 bytes at a time as little-endian words. Every consumer of a
/// chain-derived seed (shuffles, elections) draws from this so independent
/// nodes reproduce the exact same choices.
class DigestRng {
public:
    explicit DigestRng(const ledger::Digest32& seed) : seed_(seed) {}

    uint64_t next_u64() {
        if (offset_ >= block_.bytes.size()) refill();
        uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | block_.bytes[offset_ + i];
        offset_ += 8;
        return v;
    }

    /// Uniform draw in [0, bound) by rejection; bound == 0 yields 0.
    uint64_t bounded(uint64_t bound) {
        if (bound == 0) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

private:
    void refill() {
        ledger::Writer w;
        w.put_digest(seed_);
        w.put_u64(counter_++);
        block_ = ledger::sha256(w.take());
        offset_ = 0;
    }

    ledger::Digest32 seed_;
    ledger::Digest32 block_{};
    uint64_t counter_ = 0;
    size_t offset_ = 32; // force refill on first draw
};

} // namespace hldg::consensus
