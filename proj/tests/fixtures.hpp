#pragma once

#include <vector>

#include "manna/core.hpp"
#include "manna/generate.hpp"
#include "manna/market.hpp"

namespace fixtures {

inline manna::Instance random_instance(std::uint64_t seed, std::size_t n, std::size_t m) {
    manna::GenConfig cfg;
    cfg.agents = n;
    cfg.items = m;
    cfg.seed = seed;
    return manna::generate_instance(cfg);
}

// Cycles through unrestricted values in [-10, 10], goods in [5, 10] and
// chores in [-10, -5]. The one-signed ranges make the welfare equilibrium
// lopsided, so the market solver has real work to do.
inline manna::Instance stress_instance(std::uint64_t seed, std::size_t n, std::size_t m) {
    manna::GenConfig cfg;
    cfg.agents = n;
    cfg.items = m;
    cfg.seed = seed;
    if (seed % 3 == 1) cfg.value_lo = manna::Rational(5);
    if (seed % 3 == 2) cfg.value_hi = manna::Rational(-5);
    return manna::generate_instance(cfg);
}

// Welfare equilibrium followed by up to `steps` random transfers that keep it
// an equilibrium, plus an occasional positive rescaling of all prices.
inline manna::FisherMarket random_equilibrium(const manna::Instance& inst, manna::SplitMix64& rng, int steps) {
    using namespace manna;
    FisherMarket market = construct_welfare_equilibrium(inst);
    const auto n = static_cast<std::int64_t>(inst.agents());
    const auto m = static_cast<std::int64_t>(inst.items());
    if (m == 0) return market;
    for (int s = 0; s < steps; ++s) {
        const auto j = static_cast<ItemId>(rng.uniform(0, m - 1));
        const auto i = static_cast<AgentId>(rng.uniform(0, n - 1));
        if (market.allocation().owner(j) == i || market.prices()[j].is_zero()) continue;
        if (is_transferable(inst, market, j, i)) market = market.with_transfer(j, i);
    }
    if (rng.uniform(0, 1) == 1) {
        const Rational k(rng.uniform(1, 9), rng.uniform(1, 9));
        std::vector<Rational> p = market.prices();
        for (auto& x : p) x *= k;
        market = market.with_prices(p);
    }
    return market;
}

}  // namespace fixtures
