// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#pragma once

#include <cstdint>
#include <vector>

#include "hldg/netsim/simrng.hpp"

namespace hldg::netsim {

/// Double-spend race experiment: an attacker who controls fraction q of the
/// block production rate secretly extends a fork while the victim waits for
/// z confirmations, then tries to overtake the public chain.
struct DoubleSpendParams {
    double q = 0.0;         // attacker's share of total production, in [0, 1)
    uint32_t z = 0;         // confirmations the victim waits for
    uint32_t runs = 1000;   // independent races to simulate
    uint64_t seed = 1;      // base seed; run r uses substream mix_seed(seed, r)
};

struct RaceOutcome {
    bool success = false;     // attacker's fork overtook after z confirmations
    uint32_t steps = 0;       // blocks produced (both sides) before resolution
    int32_t final_lead = 0;   // attacker minus honest at resolution
};

struct DoubleSpendResult {
    DoubleSpendParams params;
    uint32_t successes = 0;
    double rate = 0.0;                // successes / runs
    std::vector<RaceOutcome> races;   // one record per run, in run order
};

/// Simulates one race. Each step one block appears; it is the attacker's
/// with probability q. The victim releases goods at the z-th honest block
/// (immediately when z == 0); from then on the attacker wins the moment the
/// secret fork leads by one. Hopeless races are abandoned once the attacker
/// trails by 64 blocks or after 100000 steps.
RaceOutcome race_once(SimRng& rng, double q, uint32_t z);

/// Runs the full experiment. Run r draws from substream mix_seed(seed, r),
/// so a grid of (q, z) cells evaluated at the same base seed sees the same
/// underlying coin flips — paired comparisons across cells are noise-free.
DoubleSpendResult simulate_double_spend(const DoubleSpendParams& params);

} // namespace hldg::netsim
