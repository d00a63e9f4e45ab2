#include <doctest.h>

#include "fixtures.hpp"
#include "manna/error.hpp"
#include "manna/fairness.hpp"
#include "manna/market.hpp"
#include "manna/search.hpp"
#include "oracle.hpp"

using namespace manna;

namespace {

std::vector<Rational> row(std::initializer_list<long> xs) {
    std::vector<Rational> r;
    for (long x : xs) r.emplace_back(x);
    return r;
}

Instance two(std::initializer_list<long> v1, std::initializer_list<long> v2) {
    return Instance({Rational(1), Rational(1)}, {row(v1), row(v2)});
}

}  // namespace

TEST_CASE("certificate for (3,-1,0) / (2,-2,-1) with everything at agent 1") {
    const Instance inst = two({3, -1, 0}, {2, -2, -1});
    const FisherMarket market(Allocation(2, {0, 0, 0}), row({3, -1, 0}));
    const auto check = check_equilibrium(inst, market);
    REQUIRE(check.valid());
    const auto& cert = *check.certificate;
    CHECK(cert.agents[0].alpha == Rational(1));
    CHECK(!cert.agents[1].alpha);
    const auto& iv = cert.agents[1].interval;
    CHECK(iv.lo == Rational(2, 3));
    CHECK(!iv.lo_open);
    CHECK(iv.hi == Rational(2));
    CHECK(iv.contains(Rational(2, 3)));
    CHECK(iv.contains(Rational(2)));
    CHECK(!iv.contains(Rational(21, 10)));
    CHECK(cert.price_signs == std::vector<int>{1, -1, 0});

    CHECK(is_transferable(inst, market, 0, 1));  // ratio 2/3
    CHECK(is_transferable(inst, market, 1, 1));  // ratio 2
}

TEST_CASE("single agent holding everything at its own values") {
    const Instance inst({Rational(3)}, {row({4, -2, 0})});
    const FisherMarket market(Allocation(1, {0, 0, 0}), row({4, -2, 0}));
    const auto check = check_equilibrium(inst, market);
    REQUIRE(check.valid());
    CHECK(check.certificate->agents[0].alpha == Rational(1));
}

TEST_CASE("violations are reported as data") {
    const Instance inst = two({3, -1, 0}, {2, -2, -1});
    SUBCASE("price sign") {
        const auto check = check_equilibrium(inst, FisherMarket(Allocation(2, {0, 0, 0}), row({3, 1, 0})));
        REQUIRE(!check.valid());
        CHECK(check.violations[0].kind == EquilibriumViolation::Kind::PriceSign);
    }
    SUBCASE("held ratio conflict") {
        const auto check = check_equilibrium(inst, FisherMarket(Allocation(2, {0, 0, 0}), {Rational(3), Rational(-1, 2), Rational(0)}));
        REQUIRE(!check.valid());  // interval [1, 2] but held ratios 1 and 2
        CHECK(check.violations[0].kind == EquilibriumViolation::Kind::HeldRatioConflict);
        // Giving item 1 to agent 2 at the same prices is fine: 2/3 and [2/3, 2].
        CHECK(check_equilibrium(inst, FisherMarket(Allocation(2, {1, 0, 0}), row({3, -1, 0}))).valid());
    }
    SUBCASE("neutral held by an agent who dislikes it") {
        const auto check = check_equilibrium(inst, FisherMarket(Allocation(2, {0, 0, 1}), row({3, -1, 0})));
        REQUIRE(!check.valid());
        bool found = false;
        for (const auto& v : check.violations) found |= v.kind == EquilibriumViolation::Kind::HeldNeutralNonzero;
        CHECK(found);
    }
    CHECK_THROWS_AS(is_transferable(inst, FisherMarket(Allocation(2, {0, 0, 0}), row({3, 1, 0})), 0, 1),
                    NotAnEquilibrium);
}

TEST_CASE("fractional markets follow the general definition") {
    const Instance inst = two({2, 2}, {1, 1});
    const auto half = Rational(1, 2);
    const auto market = FisherMarket::fractional({{half, Rational(1)}, {half, Rational(0)}}, row({2, 2}));
    CHECK(!market.integral());
    CHECK(market.budget(0) == Rational(3));
    CHECK(check_equilibrium(inst, market).valid());  // agent 2's share sits at the bottom of her interval
    const auto skewed = FisherMarket::fractional({{half, Rational(1)}, {half, Rational(0)}}, row({2, 1}));
    CHECK(!check_equilibrium(inst, skewed).valid());
    CHECK_THROWS_AS(FisherMarket::fractional({{half, Rational(1)}, {half, half}}, row({2, 2})), InputError);
    CHECK_THROWS_AS(FisherMarket::fractional({{Rational(2), Rational(1)}, {Rational(-1), Rational(0)}}, row({2, 2})),
                    InputError);
}

TEST_CASE("welfare equilibrium: ties to the lowest index") {
    const Instance inst = two({5, 5, 1, 1}, {3, 3, 1, 1});
    const FisherMarket m = construct_welfare_equilibrium(inst);
    CHECK(m.allocation().owners() == std::vector<AgentId>{0, 0, 0, 0});
    CHECK(m.prices() == row({5, 5, 1, 1}));
    CHECK(check_equilibrium(inst, m).valid());

    const Instance same = two({2, -3, 4}, {2, -3, 4});
    CHECK(construct_welfare_equilibrium(same).allocation().owners() == std::vector<AgentId>{0, 0, 0});
}

TEST_CASE("welfare equilibria are valid and price rescaling preserves validity") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const Instance inst = fixtures::random_instance(seed, 2 + seed % 3, 7);
        const FisherMarket m = construct_welfare_equilibrium(inst);
        const auto check = check_equilibrium(inst, m);
        REQUIRE(check.valid());
        const Rational k(static_cast<long>(seed % 5) + 1, 3);
        std::vector<Rational> p = m.prices();
        for (auto& x : p) x *= k;
        const auto scaled = check_equilibrium(inst, m.with_prices(p));
        REQUIRE(scaled.valid());
        for (AgentId i = 0; i < inst.agents(); ++i) {
            const auto& a = check.certificate->agents[i];
            const auto& b = scaled.certificate->agents[i];
            CHECK(a.alpha.has_value() == b.alpha.has_value());
            if (a.alpha) CHECK(*b.alpha == *a.alpha / k);
            CHECK(b.interval.lo == a.interval.lo / k);
        }
    }
}

TEST_CASE("transferability matches re-checking the moved market") {
    SplitMix64 rng(77);
    int positives = 0;
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        const Instance inst = fixtures::random_instance(seed, 2 + seed % 2, 6);
        const FisherMarket m = fixtures::random_equilibrium(inst, rng, 10);
        REQUIRE(check_equilibrium(inst, m).valid());
        for (ItemId j = 0; j < inst.items(); ++j)
            for (AgentId i = 0; i < inst.agents(); ++i) {
                if (m.allocation().owner(j) == i || m.prices()[j].is_zero()) continue;
                const bool t = is_transferable(inst, m, j, i);
                positives += t;
                CHECK(t == check_equilibrium(inst, m.with_transfer(j, i)).valid());
            }
    }
    CHECK(positives > 0);
}

TEST_CASE("pWEF1") {
    const FisherMarket m(Allocation(2, {0, 0, 1, 1}), row({5, 5, 1, 1}));
    const auto w = row({1, 1});
    CHECK(pwef1_envies(m, w, 1, 0));
    CHECK(!pwef1_envies(m, w, 0, 1));

    const FisherMarket even(Allocation(2, {0, 1}), row({3, 3}));
    CHECK(!pwef1_envies(even, w, 0, 1));
    CHECK(!pwef1_envies(even, w, 1, 0));
}

TEST_CASE("WEF1-envy implies pWEF1-envy on random equilibria") {
    SplitMix64 rng(2024);
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        const Instance inst = fixtures::random_instance(seed, 2 + seed % 3, 6);
        const FisherMarket m = fixtures::random_equilibrium(inst, rng, 15);
        const Bundles A = m.allocation().bundles();
        bool any_pwef1 = false;
        for (AgentId i = 0; i < inst.agents(); ++i)
            for (AgentId j = 0; j < inst.agents(); ++j) {
                if (i == j) continue;
                const bool p = pwef1_envies(m, inst.weights(), i, j);
                any_pwef1 |= p;
                if (wef1_envies(inst, A, i, j).envies) CHECK(p);
            }
        if (!any_pwef1) CHECK(check_allocation(inst, A, Notion::WEF1).overall);
    }
}

TEST_CASE("solver from the welfare equilibrium on (5,5,1,1) / (3,3,1,1)") {
    const Instance inst = two({5, 5, 1, 1}, {3, 3, 1, 1});
    const auto res = solve_two_agent(inst);
    const auto& it = res.trace.iterations;
    REQUIRE(it.size() == 3);
    CHECK(it[0].transfer.item == 2);
    CHECK(!it[0].rescale);
    CHECK(it[1].transfer.item == 3);
    REQUIRE(it[1].rescale);
    CHECK(it[1].rescale->beta == Rational(1));
    CHECK(it[1].rescale->rho == Rational(1));
    REQUIRE(it[2].rescale);
    CHECK(it[2].rescale->beta == Rational(3, 5));
    CHECK(it[2].rescale->rho == Rational(3, 5));
    CHECK(it[2].prices == std::vector<Rational>{Rational(5), Rational(5), Rational(5, 3), Rational(5, 3)});
    CHECK(it[2].transfer.item == 0);
    CHECK(res.market.allocation().bundles() == Bundles{{1}, {0, 2, 3}});
    CHECK(check_allocation(inst, res.market.allocation(), Notion::WEF1).overall);
    CHECK(check_equilibrium(inst, res.market).valid());
}

TEST_CASE("solver from ({1,2},{3,4}) at p=(5,5,1,1): one iteration") {
    const Instance inst = two({5, 5, 1, 1}, {3, 3, 1, 1});
    const FisherMarket start(Allocation(2, {0, 0, 1, 1}), row({5, 5, 1, 1}));
    const auto res = solve_two_agent(inst, start);
    REQUIRE(res.trace.iterations.size() == 1);
    const auto& it = res.trace.iterations[0];
    CHECK(it.least == 1);
    CHECK(it.other == 0);
    REQUIRE(it.rescale);
    CHECK(it.rescale->beta == Rational(3, 5));
    CHECK(!it.rescale->gamma);
    CHECK(it.rescale->rho == Rational(3, 5));
    CHECK(it.prices == std::vector<Rational>{Rational(5), Rational(5), Rational(5, 3), Rational(5, 3)});
    CHECK(it.transfer.item == 0);
    CHECK(it.transfer.good);
    CHECK(it.transfer.to == 1);
    CHECK(res.market.allocation().bundles() == Bundles{{1}, {0, 2, 3}});
    CHECK(check_equilibrium(inst, res.market).valid());
}

TEST_CASE("solver leaves a WEF1 equilibrium alone") {
    const Instance inst = two({4, 0}, {0, 4});
    const auto start = construct_welfare_equilibrium(inst);
    const auto res = solve_two_agent(inst);
    CHECK(res.trace.iterations.empty());
    CHECK(res.market == start);
}

TEST_CASE("solver input errors") {
    const Instance three({Rational(1), Rational(1), Rational(1)}, {row({1}), row({1}), row({1})});
    CHECK_THROWS_AS(solve_two_agent(three), InputError);
    const Instance inst = two({5, 5, 1, 1}, {3, 3, 1, 1});
    CHECK_THROWS_AS(solve_two_agent(inst, FisherMarket(Allocation(2, {1, 1, 1, 1}), row({5, 5, 1, 1}))),
                    NotAnEquilibrium);
}

TEST_CASE("solver outputs and traces on random instances") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        const std::size_t m = 1 + seed % 8;
        const Instance inst = fixtures::random_instance(seed, 2, m);
        const auto res = solve_two_agent(inst);
        const Bundles A = res.market.allocation().bundles();
        CHECK(oracle::allocation_ok(inst, A, oracle::Kind::Ef1));
        CHECK(check_equilibrium(inst, res.market).valid());
        CHECK(!oracle::pareto_dominated(inst, A));
        const auto& its = res.trace.iterations;
        CHECK(its.size() <= m);
        for (std::size_t k = 0; k < its.size(); ++k) {
            CHECK(its[k].least == its[0].least);
            CHECK(its[k].other == its[0].other);
            if (k > 0) CHECK(its[k].progress < its[k - 1].progress);
            if (its[k].rescale) {
                CHECK(its[k].rescale->rho.is_positive());
                CHECK(its[k].rescale->rho <= Rational(1));
            }
            const FisherMarket after(Allocation::from_bundles(m, its[k].bundles), its[k].prices);
            CHECK(check_equilibrium(inst, after).valid());
        }
    }
}
