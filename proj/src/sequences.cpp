#include "manna/sequences.hpp"

#include <algorithm>
#include <string>

#include "manna/error.hpp"
#include "manna/search.hpp"

namespace manna {

AgentId PickerRule::next(std::span<const Rational> weights, std::span<const std::size_t> picks) const {
    if (custom) return custom(weights, picks);
    AgentId best = 0;
    for (AgentId i = 1; i < weights.size(); ++i) {
        // (t_i + d) / w_i  vs  (t_best + d) / w_best
        const Rational lhs = Rational(static_cast<long>(picks[i]) + divisor_offset) * weights[best];
        const Rational rhs = Rational(static_cast<long>(picks[best]) + divisor_offset) * weights[i];
        if (lhs < rhs || (lhs == rhs && weights[i] > weights[best])) best = i;
    }
    return best;
}

SplitInstance split_items(const Instance& inst) {
    SplitInstance split;
    for (ItemId j = 0; j < inst.items(); ++j) {
        if (classify_item(inst, j).is_chore())
            split.chores.push_back(j);
        else
            split.goods.push_back(j);
    }
    return split;
}

namespace {

// Consecutive skipped turns tolerated before a rule is declared stalled.
constexpr std::size_t kMaxConsecutiveSkips = 1'000'000;

// Item of `remaining` that agent i values most; lowest index on ties.
std::vector<ItemId>::iterator favourite(const Instance& inst, AgentId i, std::vector<ItemId>& remaining) {
    auto best = remaining.begin();
    for (auto it = remaining.begin(); it != remaining.end(); ++it)
        if (inst.value(i, *it) > inst.value(i, *best)) best = it;
    return best;
}

bool anyone_wants(const Instance& inst, const std::vector<ItemId>& remaining) {
    for (AgentId i = 0; i < inst.agents(); ++i)
        for (ItemId j : remaining)
            if (inst.value(i, j).is_positive()) return true;
    return false;
}

// Goods repair only considers owners who value their goods >= 0: that is
// what the picking sequence guarantees and what the composition needs.
std::optional<Allocation> repair_search(const Instance& sub, bool goods) {
    if (!goods) return search::wef1_exists(sub);
    std::optional<Allocation> found;
    search::enumerate_allocations(sub.agents(), sub.items(), [&](const Allocation& a) {
        for (ItemId k = 0; k < sub.items(); ++k)
            if (sub.value(a.owner(k), k).is_negative()) return true;
        if (!check_allocation(sub, a, Notion::WEF1).overall) return true;
        found = a;
        return false;
    });
    return found;
}

void post_check_and_repair(const Instance& inst, std::span<const ItemId> part, PartAllocation& out,
                           const char* what, bool goods) {
    out.check = check_allocation(inst, out.bundles, Notion::WEF1);
    if (out.check.overall) return;

    const auto count = search::allocation_count(inst.agents(), part.size());
    if (part.size() > kMaxRepairItems || !count || *count > search::enumeration_cap())
        throw ValidationFailed(std::string(what) + " picking sequence output is not WEF1 and the part (" +
                               std::to_string(part.size()) + " items) is too large for exhaustive repair");

    const auto found = repair_search(inst.restricted_to(part), goods);
    if (!found) throw ValidationFailed(std::string(what) + " part admits no WEF1 allocation");
    out.bundles.assign(inst.agents(), {});
    for (std::size_t k = 0; k < part.size(); ++k) out.bundles[found->owner(k)].push_back(part[k]);
    for (auto& b : out.bundles) std::sort(b.begin(), b.end());
    out.repaired = true;
    out.check = check_allocation(inst, out.bundles, Notion::WEF1);
    if (!out.check.overall) throw InternalInvariantViolation("repaired part is not WEF1");
}

}  // namespace

PartAllocation allocate_goods_wef1(const Instance& inst, std::span<const ItemId> goods, const PickerRule& rule) {
    PartAllocation out;
    out.bundles.assign(inst.agents(), {});
    std::vector<ItemId> remaining(goods.begin(), goods.end());
    std::sort(remaining.begin(), remaining.end());
    std::vector<std::size_t> picks(inst.agents(), 0);

    std::size_t skips = 0;
    while (anyone_wants(inst, remaining)) {
        const AgentId i = rule.next(inst.weights(), picks);
        ++picks[i];
        auto it = favourite(inst, i, remaining);
        if (!inst.value(i, *it).is_positive()) {
            out.turns.push_back({i, std::nullopt});
            if (++skips > kMaxConsecutiveSkips) throw ValidationFailed("goods picker rule stalled");
            continue;
        }
        skips = 0;
        out.turns.push_back({i, *it});
        out.bundles[i].push_back(*it);
        remaining.erase(it);
    }

    // Nobody values what is left positively; each item has a zero-valuer.
    for (ItemId j : remaining) {
        AgentId holder = inst.agents();
        for (AgentId i = 0; i < inst.agents() && holder == inst.agents(); ++i)
            if (inst.value(i, j).is_zero()) holder = i;
        if (holder == inst.agents())
            throw InternalInvariantViolation("leftover item " + inst.label(j) + " has no zero-valuer");
        out.bundles[holder].push_back(j);
        out.leftovers.emplace_back(j, holder);
    }
    for (auto& b : out.bundles) std::sort(b.begin(), b.end());

    post_check_and_repair(inst, goods, out, "goods", true);
    return out;
}

PartAllocation allocate_chores_wef1(const Instance& inst, std::span<const ItemId> chores, const PickerRule& rule) {
    PartAllocation out;
    out.bundles.assign(inst.agents(), {});
    std::vector<ItemId> remaining(chores.begin(), chores.end());
    std::sort(remaining.begin(), remaining.end());
    std::vector<std::size_t> picks(inst.agents(), 0);

    while (!remaining.empty()) {
        const AgentId i = rule.next(inst.weights(), picks);
        ++picks[i];
        auto it = favourite(inst, i, remaining);
        out.turns.push_back({i, *it});
        out.bundles[i].push_back(*it);
        remaining.erase(it);
    }
    for (auto& b : out.bundles) std::sort(b.begin(), b.end());

    post_check_and_repair(inst, chores, out, "chores", false);
    return out;
}

Allocation compose_parts(const Instance& inst, const Bundles& goods_part, const Bundles& chores_part) {
    Bundles merged(inst.agents());
    for (AgentId i = 0; i < inst.agents(); ++i) {
        merged[i] = goods_part[i];
        merged[i].insert(merged[i].end(), chores_part[i].begin(), chores_part[i].end());
    }
    Allocation alloc = Allocation::from_bundles(inst.items(), merged);

    // The composition argument rescues envy on the goods side by a good of the
    // envied agent, so it needs every agent to value her own goods >= 0.
    // Without that, two WEF1 parts can compose to a non-WEF1T union.
    bool own_goods_nonnegative = true;
    for (AgentId i = 0; i < inst.agents(); ++i)
        for (ItemId g : goods_part[i]) own_goods_nonnegative = own_goods_nonnegative && !inst.value(i, g).is_negative();
    const bool parts_wef1 = check_allocation(inst, goods_part, Notion::WEF1).overall &&
                            check_allocation(inst, chores_part, Notion::WEF1).overall;
    if (parts_wef1 && own_goods_nonnegative && !check_allocation(inst, alloc, Notion::WEF1T).overall)
        throw InternalInvariantViolation("union of WEF1 goods and chores allocations is not WEF1T");
    return alloc;
}

Composition compose_wef1t(const Instance& inst, const PickerRule& goods_rule, const PickerRule& chores_rule) {
    SplitInstance split = split_items(inst);
    PartAllocation goods = allocate_goods_wef1(inst, split.goods, goods_rule);
    PartAllocation chores = allocate_chores_wef1(inst, split.chores, chores_rule);
    Allocation alloc = compose_parts(inst, goods.bundles, chores.bundles);
    EnvyReport report = check_allocation(inst, alloc, Notion::WEF1T);
    return Composition{std::move(split), std::move(goods), std::move(chores), std::move(alloc), std::move(report)};
}

}  // namespace manna
