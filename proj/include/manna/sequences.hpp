#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "manna/core.hpp"
#include "manna/fairness.hpp"

namespace manna {

/// Chooses the next agent to pick from the weights and per-agent pick counts.
///
/// The built-in rule is a divisor method: argmin over agents of
/// (picks_i + offset) / w_i, ties to the larger weight, then the lower index.
/// A custom function replaces it entirely.
struct PickerRule {
    using Custom = std::function<AgentId(std::span<const Rational> weights, std::span<const std::size_t> picks)>;

    int divisor_offset = 0;
    Custom custom;

    AgentId next(std::span<const Rational> weights, std::span<const std::size_t> picks) const;

    static PickerRule divisor(int offset) { return PickerRule{offset, {}}; }
};

/// Goods and neutral items on one side, chores on the other.
struct SplitInstance {
    std::vector<ItemId> goods;   // goods and neutral items, ascending
    std::vector<ItemId> chores;  // ascending
};

SplitInstance split_items(const Instance& inst);

/// One turn of a picking sequence. `item` is empty when the picker skipped.
struct Turn {
    AgentId agent;
    std::optional<ItemId> item;
};

/// Allocation of one part of the items (bundles hold original item ids).
struct PartAllocation {
    Bundles bundles;
    std::vector<Turn> turns;
    /// Leftover items nobody valued positively, with the zero-valuer that got them.
    std::vector<std::pair<ItemId, AgentId>> leftovers;
    /// True when the sequence output failed its WEF1 post-check and the
    /// brute-force fallback replaced it.
    bool repaired = false;
    EnvyReport check;  // WEF1 report restricted to the part
};

/// Largest part on which the brute-force repair is attempted.
inline constexpr std::size_t kMaxRepairItems = 12;

/// Picking sequence over `goods`: each picker takes her favourite remaining
/// item when she values it > 0, otherwise skips (the skip still counts as a
/// pick). Items nobody wants go to the lowest-index agent valuing them 0.
/// The result is checked for WEF1 on the part and repaired by exhaustive
/// search when needed; throws ValidationFailed if repair is impossible.
PartAllocation allocate_goods_wef1(const Instance& inst, std::span<const ItemId> goods,
                                   const PickerRule& rule = PickerRule::divisor(0));

/// Picking sequence over `chores`: each picker takes her least-bad
/// remaining chore. Same post-check and repair as the goods allocator.
PartAllocation allocate_chores_wef1(const Instance& inst, std::span<const ItemId> chores,
                                    const PickerRule& rule = PickerRule::divisor(0));

struct Composition {
    SplitInstance split;
    PartAllocation goods;
    PartAllocation chores;
    Allocation allocation;
    EnvyReport report;  // WEF1T report of the composed allocation
};

/// Union of a WEF1 allocation of the goods and one of the chores. Throws
/// InternalInvariantViolation if both parts pass WEF1, every agent values her
/// own goods >= 0, and still the union is not WEF1T. Parts where some agent
/// holds a good she dislikes are merged without the check; such unions can
/// fail WEF1T.
Allocation compose_parts(const Instance& inst, const Bundles& goods_part, const Bundles& chores_part);

/// WEF1T allocation of mixed manna in polynomial time.
Composition compose_wef1t(const Instance& inst, const PickerRule& goods_rule = PickerRule::divisor(0),
                          const PickerRule& chores_rule = PickerRule::divisor(0));

}  // namespace manna
