#include "manna/generate.hpp"

#include <string>

#include "manna/error.hpp"

namespace manna {

namespace {

// Integer grid bounds [ceil(lo*den), floor(hi*den)].
struct Grid {
    std::int64_t lo;
    std::int64_t hi;
    long den;

    bool empty() const { return lo > hi; }
    Rational at(std::int64_t k) const { return Rational(static_cast<long>(k), den); }
};

std::int64_t floor_of(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
    if (!q.fits_slong_p()) throw InvalidRange("range bound too large: " + r.str());
    return q.get_si();
}

std::int64_t ceil_of(const Rational& r) { return -floor_of(-r); }

Grid make_grid(const Rational& lo, const Rational& hi, long den, const char* what) {
    if (den <= 0) throw InvalidRange(std::string(what) + " denominator must be positive");
    if (lo > hi) throw InvalidRange(std::string(what) + " range is empty: " + lo.str() + " > " + hi.str());
    Grid g{ceil_of(lo * Rational(den)), floor_of(hi * Rational(den)), den};
    if (g.empty()) throw InvalidRange(std::string(what) + " range holds no multiple of 1/" + std::to_string(den));
    return g;
}

Grid clip(Grid g, std::int64_t lo, std::int64_t hi) {
    g.lo = std::max(g.lo, lo);
    g.hi = std::min(g.hi, hi);
    return g;
}

}  // namespace

Instance generate_instance(const GenConfig& cfg) {
    if (cfg.agents == 0) throw InvalidRange("need at least one agent");
    const Grid values = make_grid(cfg.value_lo, cfg.value_hi, cfg.value_denominator, "value");
    const Grid weights = make_grid(cfg.weight_lo, cfg.weight_hi, cfg.weight_denominator, "weight");
    if (!cfg.weight_lo.is_positive()) throw InvalidRange("weights must be positive");

    SplitMix64 rng(cfg.seed);
    std::vector<Rational> w;
    for (std::size_t i = 0; i < cfg.agents; ++i) w.push_back(weights.at(rng.uniform(weights.lo, weights.hi)));

    std::vector<std::vector<Rational>> v(cfg.agents, std::vector<Rational>(cfg.items));
    if (!cfg.mix) {
        for (std::size_t j = 0; j < cfg.items; ++j)
            for (std::size_t i = 0; i < cfg.agents; ++i) v[i][j] = values.at(rng.uniform(values.lo, values.hi));
        return Instance(std::move(w), std::move(v));
    }

    const ItemMix& mix = *cfg.mix;
    const double total = mix.goods + mix.chores + mix.neutral;
    if (mix.goods < 0 || mix.chores < 0 || mix.neutral < 0 || !(total > 0))
        throw InvalidRange("item mix needs non-negative probabilities with a positive sum");
    const Grid positive = clip(values, 1, values.hi);
    const Grid negative = clip(values, values.lo, -1);
    const Grid non_positive = clip(values, values.lo, 0);
    if (mix.goods > 0 && positive.empty()) throw InvalidRange("goods requested but the value range has no positive value");
    if (mix.chores > 0 && negative.empty()) throw InvalidRange("chores requested but the value range has no negative value");
    if (mix.neutral > 0 && non_positive.empty()) throw InvalidRange("neutral items requested but 0 is out of range");
    if (mix.neutral > 0 && values.hi < 0) throw InvalidRange("neutral items requested but 0 is out of range");

    for (std::size_t j = 0; j < cfg.items; ++j) {
        const double u = rng.unit() * total;
        if (u < mix.goods) {
            bool any_positive = false;
            for (std::size_t i = 0; i < cfg.agents; ++i) {
                v[i][j] = values.at(rng.uniform(values.lo, values.hi));
                any_positive |= v[i][j].is_positive();
            }
            if (!any_positive) {
                const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cfg.agents) - 1));
                v[i][j] = positive.at(rng.uniform(positive.lo, positive.hi));
            }
        } else if (u < mix.goods + mix.chores) {
            for (std::size_t i = 0; i < cfg.agents; ++i) v[i][j] = negative.at(rng.uniform(negative.lo, negative.hi));
        } else {
            for (std::size_t i = 0; i < cfg.agents; ++i)
                v[i][j] = non_positive.at(rng.uniform(non_positive.lo, non_positive.hi));
            const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cfg.agents) - 1));
            v[i][j] = Rational(0);
        }
    }
    return Instance(std::move(w), std::move(v));
}

}  // namespace manna
