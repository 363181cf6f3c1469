// Copyright (c) 2026 The hldg developers
// Distributed under the MIT software license.

#include "hldg/exchange/settle.hpp"

#include <algorithm>
#include <set>

namespace hldg::exchange {

bool settle_instant(Accounts& accounts, const Trade& trade) {
    TraderAccount& buyer = accounts[trade.buyer];
    TraderAccount& seller = accounts[trade.seller];
    const int64_t notional = static_cast<int64_t>(trade.notional());
    const int64_t qty = static_cast<int64_t>(trade.qty);

    // Check both legs before touching either.
    if (buyer.cash < notional) return false;
    if (seller.holding(trade.security) < qty) return false;

    buyer.cash -= notional;
    seller.cash += notional;
    seller.holdings[trade.security] -= qty;
    buyer.holdings[trade.security] += qty;
    return true;
}

std::vector<Obligation> trade_obligations(const Trade& trade, uint32_t cycle_days) {
    const uint32_t due = trade.trade_day + cycle_days;
    Obligation cash_leg{trade.seq, trade.buyer, trade.seller, Asset::cash(),
                        trade.notional(), due};
    Obligation delivery{trade.seq, trade.seller, trade.buyer,
                        Asset::security(trade.security),
                        trade.qty, due};
    return {cash_leg, delivery};
}

namespace {

using NetMap = std::map<Address, std::map<Asset, int64_t>>;

NetMap net_positions(const std::vector<Obligation>& batch) {
    NetMap net;
    for (const auto& o : batch) {
        const int64_t amt = static_cast<int64_t>(o.amount);
        net[o.from][o.asset] -= amt;
        net[o.to][o.asset] += amt;
    }
    return net;
}

/// First net debtor whose balance cannot cover their net debit. Only net
/// debtors can default on a batch: they always hold at least one paying
/// obligation to pull, so the caller's loop shrinks and terminates.
std::optional<std::pair<Address, Asset>> first_shortfall(const Accounts& accounts,
                                                         const NetMap& net) {
    for (const auto& [addr, by_asset] : net) {
        const auto it = accounts.find(addr);
        for (const auto& [asset, delta] : by_asset) {
            const int64_t have = it == accounts.end() ? 0 : it->second.position(asset);
            if (delta < 0 && have + delta < 0) return std::make_pair(addr, asset);
        }
    }
    return std::nullopt;
}

} // namespace

DayResult settle_cycle(Accounts& accounts, std::vector<Obligation>& pending,
                       uint32_t day, ledger::FailurePolicy policy) {
    DayResult result;
    result.day = day;

    std::vector<Obligation> batch;
    std::vector<Obligation> later;
    for (auto& o : pending)
        (o.due_day <= day ? batch : later).push_back(std::move(o));
    pending = std::move(later);

    // Pull defaulting trades until the whole batch can clear.
    while (!batch.empty()) {
        const NetMap net = net_positions(batch);
        const auto shortfall = first_shortfall(accounts, net);
        if (!shortfall) break;

        const auto& [debtor, asset] = *shortfall;
        std::set<uint64_t> pulled;
        for (const auto& o : batch)
            if (o.from == debtor && o.asset == asset) pulled.insert(o.trade_seq);

        std::vector<Obligation> kept;
        for (auto& o : batch) {
            if (!pulled.count(o.trade_seq)) {
                kept.push_back(std::move(o));
                continue;
            }
            if (policy == ledger::FailurePolicy::Carry) {
                o.due_day = day + 1;
                pending.push_back(std::move(o));
            }
        }
        batch = std::move(kept);
        auto& tally = policy == ledger::FailurePolicy::Carry ? result.carried
                                                             : result.cancelled;
        tally.insert(tally.end(), pulled.begin(), pulled.end());
    }

    // The survivors net to feasible positions; pay debtors to creditors,
    // smallest address first on both sides.
    const NetMap net = net_positions(batch);
    std::set<Asset> assets;
    for (const auto& [addr, by_asset] : net)
        for (const auto& [asset, delta] : by_asset) assets.insert(asset);

    for (const auto& asset : assets) {
        std::vector<std::pair<Address, int64_t>> debtors, creditors;
        for (const auto& [addr, by_asset] : net) {
            const auto it = by_asset.find(asset);
            if (it == by_asset.end() || it->second == 0) continue;
            if (it->second < 0)
                debtors.emplace_back(addr, -it->second);
            else
                creditors.emplace_back(addr, it->second);
        }
        // NetMap iterates in address order already; keep that order.
        size_t di = 0, ci = 0;
        while (di < debtors.size() && ci < creditors.size()) {
            const int64_t amount = std::min(debtors[di].second, creditors[ci].second);
            result.transfers.push_back(
                {debtors[di].first, creditors[ci].first, asset,
                 static_cast<uint64_t>(amount)});
            debtors[di].second -= amount;
            creditors[ci].second -= amount;
            if (debtors[di].second == 0) ++di;
            if (creditors[ci].second == 0) ++ci;
        }
    }

    for (const auto& t : result.transfers) {
        accounts[t.from].adjust(t.asset, -static_cast<int64_t>(t.amount));
        accounts[t.to].adjust(t.asset, static_cast<int64_t>(t.amount));
    }

    std::sort(result.carried.begin(), result.carried.end());
    std::sort(result.cancelled.begin(), result.cancelled.end());
    return result;
}

} // namespace hldg::exchange
