#include <doctest.h>

#include <algorithm>

#include "manna/core.hpp"
#include "manna/error.hpp"
#include "manna/generate.hpp"
#include "manna/search.hpp"
#include "oracle.hpp"

using namespace manna;

namespace {

std::vector<Rational> row(std::initializer_list<long> xs) {
    std::vector<Rational> r;
    for (long x : xs) r.emplace_back(x);
    return r;
}

Instance table2(int t, const Rational& eps) { return search::ordinal_family(eps)[static_cast<std::size_t>(t - 1)]; }

}  // namespace

TEST_CASE("validate_instance accepts a 2x3 instance with weights (2,3)") {
    RawInstance raw{{"2", "3"}, std::nullopt, {{"-9/10", "1", "1"}, {"-11/10", "1", "1"}}};
    const auto res = validate_instance(raw);
    REQUIRE(res.ok());
    CHECK(res.instance->agents() == 2);
    CHECK(res.instance->items() == 3);
    CHECK(res.instance->weight(1) == Rational(3));
}

TEST_CASE("validate_instance collects every issue") {
    SUBCASE("zero weight") {
        const auto res = validate_instance({{"0", "1"}, std::nullopt, {{"1"}, {"1"}}});
        REQUIRE(!res.ok());
        REQUIRE(res.issues.size() == 1);
        CHECK(res.issues[0].kind == InstanceIssue::Kind::NonPositiveWeight);
        CHECK(res.issues[0].index == 0u);
    }
    SUBCASE("row count mismatch") {
        const auto res = validate_instance({{"1", "1"}, std::nullopt, {{"1"}, {"1"}, {"1"}}});
        REQUIRE(!res.ok());
        CHECK(res.issues[0].kind == InstanceIssue::Kind::DimensionMismatch);
    }
    SUBCASE("ragged rows, bad label count and a malformed entry together") {
        const auto res =
            validate_instance({{"-1", "2/4"}, std::vector<std::string>{"a"}, {{"1", "2"}, {"1", "x"}}});
        REQUIRE(!res.ok());
        int weights = 0, dims = 0, malformed = 0;
        for (const auto& issue : res.issues) {
            weights += issue.kind == InstanceIssue::Kind::NonPositiveWeight;
            dims += issue.kind == InstanceIssue::Kind::DimensionMismatch;
            malformed += issue.kind == InstanceIssue::Kind::MalformedRational;
        }
        CHECK(weights == 1);
        CHECK(dims == 1);
        CHECK(malformed == 2);  // "2/4" and "x"
    }
}

TEST_CASE("Instance constructor enforces its invariants") {
    CHECK_THROWS_AS(Instance({Rational(1), Rational(-1)}, {row({1}), row({1})}), InputError);
    CHECK_THROWS_AS(Instance({Rational(1)}, {row({1}), row({1})}), InputError);
    CHECK_THROWS_AS(Instance({Rational(1), Rational(1)}, {row({1, 2}), row({1})}), InputError);
}

TEST_CASE("classify_item") {
    const Rational eps(1, 8);
    const Instance t1 = table2(1, eps);
    CHECK(classify_item(t1, 0) == ItemKind{ItemKind::Kind::Good, true});
    CHECK(classify_item(table2(3, eps), 3).is_chore());

    const Instance inst({Rational(1), Rational(1)}, {row({0, 1, -1, 0}), row({-1, -1, -2, 0})});
    CHECK(classify_item(inst, 0).is_neutral());
    CHECK(classify_item(inst, 1) == ItemKind{ItemKind::Kind::Good, false});
    CHECK(classify_item(inst, 2).is_chore());
    CHECK(classify_item(inst, 3).is_neutral());
}

TEST_CASE("classification is exclusive and invariant under positive row scaling") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        GenConfig cfg;
        cfg.agents = 3;
        cfg.items = 6;
        cfg.seed = seed;
        cfg.value_lo = Rational(-3);
        cfg.value_hi = Rational(3);
        const Instance inst = generate_instance(cfg);
        const Instance scaled = inst.with_row_scaled(seed % 3, Rational(static_cast<long>(seed % 7) + 1, 3));
        for (ItemId j = 0; j < inst.items(); ++j) {
            const ItemKind k = classify_item(inst, j);
            CHECK(int(k.is_good()) + int(k.is_neutral()) + int(k.is_chore()) == 1);
            CHECK(classify_item(scaled, j) == k);
            // Oracle from the definitions.
            bool any_pos = false, any_neg = false, all_neg = true;
            for (AgentId i = 0; i < inst.agents(); ++i) {
                any_pos |= inst.value(i, j).is_positive();
                any_neg |= inst.value(i, j).is_negative();
                all_neg &= inst.value(i, j).is_negative();
            }
            CHECK(k.is_good() == any_pos);
            CHECK(k.is_chore() == all_neg);
            if (k.is_good()) CHECK(k.pure == !any_neg);
        }
    }
}

TEST_CASE("bundle_value") {
    const Instance t1 = table2(1, Rational(1, 8));
    const std::vector<ItemId> g12{0, 1};
    CHECK(bundle_value(t1, 0, g12) == Rational(19, 8));
    CHECK(bundle_value(t1, 1, std::vector<ItemId>{}) == Rational(0));
}

TEST_CASE("bundle_value matches a summation oracle and is additive") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        GenConfig cfg;
        cfg.agents = 2;
        cfg.items = 8;
        cfg.seed = seed;
        cfg.value_denominator = 7;
        const Instance inst = generate_instance(cfg);
        std::vector<ItemId> all(inst.items()), s, t;
        for (ItemId j = 0; j < inst.items(); ++j) {
            all[j] = j;
            ((seed >> (j % 8)) & 1 ? s : t).push_back(j);
        }
        CHECK(oracle::of(bundle_value(inst, 0, all)) == oracle::value(inst, 0, all));
        CHECK(bundle_value(inst, 1, all) == bundle_value(inst, 1, s) + bundle_value(inst, 1, t));
    }
}

TEST_CASE("ordinally_compatible") {
    const Rational eps(1, 8);
    CHECK(ordinally_compatible(table2(1, eps).row(0), table2(3, eps).row(0)));
    CHECK(!ordinally_compatible(row({1, 2}), row({2, 1})));
    CHECK(!ordinally_compatible(row({1, 0}), row({1, -1})));
}

TEST_CASE("ordinal compatibility is reflexive, symmetric and scale invariant") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        GenConfig cfg;
        cfg.agents = 2;
        cfg.items = 4;
        cfg.seed = seed;
        cfg.value_lo = Rational(-2);
        cfg.value_hi = Rational(2);
        const Instance inst = generate_instance(cfg);
        const auto u = inst.row(0), v = inst.row(1);
        const Instance scaled = inst.with_row_scaled(0, Rational(5, 3));
        CHECK(ordinally_compatible(u, u));
        CHECK(ordinally_compatible(u, v) == ordinally_compatible(v, u));
        CHECK(ordinally_compatible(scaled.row(0), v) == ordinally_compatible(u, v));
    }
}

TEST_CASE("Allocation from_bundles requires a partition") {
    const Allocation a = Allocation::from_bundles(4, {{0, 2}, {1, 3}});
    CHECK(a.owners() == std::vector<AgentId>{0, 1, 0, 1});
    CHECK(a.bundle(1) == std::vector<ItemId>{1, 3});
    CHECK_THROWS_AS(Allocation::from_bundles(4, {{0, 2}, {1}}), InputError);
    CHECK_THROWS_AS(Allocation::from_bundles(4, {{0, 2}, {1, 2, 3}}), InputError);
    CHECK_THROWS_AS(Allocation::from_bundles(3, {{0, 5}, {1, 2}}), InputError);
    CHECK_THROWS_AS(Allocation(2, {0, 2}), InputError);
}

TEST_CASE("restricted_to keeps labels and columns") {
    const Instance t1 = table2(1, Rational(1, 8));
    const std::vector<ItemId> keep{3, 0};
    const Instance sub = t1.restricted_to(keep);
    CHECK(sub.items() == 2);
    CHECK(sub.label(0) == "c");
    CHECK(sub.value(1, 1) == t1.value(1, 0));
}
