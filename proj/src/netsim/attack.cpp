// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/netsim/attack.hpp"

namespace hldg::netsim {

namespace {
constexpr int32_t kAbandonDeficit = -64;
constexpr uint32_t kMaxSteps = 100000;
} // namespace

RaceOutcome race_once(SimRng& rng, double q, uint32_t z)
{
    RaceOutcome out;
    int32_t lead = 0;          // attacker blocks minus honest blocks
    uint32_t honest = 0;       // honest blocks so far
    bool released = z == 0;    // victim has handed over the goods

    while (out.steps < kMaxSteps) {
        if (released && lead >= 1) {
            out.success = true;
            break;
        }
        if (lead <= kAbandonDeficit) break;
        ++out.steps;
        if (rng.bernoulli(q)) {
            ++lead;
        } else {
            --lead;
            ++honest;
            if (honest >= z) released = true;
        }
    }
    out.final_lead = lead;
    return out;
}

DoubleSpendResult simulate_double_spend(const DoubleSpendParams& params)
{
    DoubleSpendResult result;
    result.params = params;
    result.races.reserve(params.runs);
    for (uint32_t r = 0; r < params.runs; ++r) {
        SimRng rng(mix_seed(params.seed, r));
        RaceOutcome race = race_once(rng, params.q, params.z);
        if (race.success) ++result.successes;
        result.races.push_back(race);
    }
    result.rate = params.runs == 0
                      ? 0.0
                      : static_cast<double>(result.successes) / params.runs;
    return result;
}

} // namespace hldg::netsim
