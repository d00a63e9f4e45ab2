#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "manna/core.hpp"
#include "manna/fairness.hpp"

namespace manna::search {

inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t{1} << 24;

/// Cap from MANNA_ENUM_CAP when set to a positive integer, else the default.
std::uint64_t enumeration_cap();

/// n^m, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> allocation_count(std::size_t agents, std::size_t items);

/// All n^m owner vectors in lexicographic order (item 0 most significant).
/// Random access, so predicate evaluation can be sharded.
class OwnerSpace {
public:
    /// Throws CapExceeded when n^m > cap.
    OwnerSpace(std::size_t agents, std::size_t items, std::uint64_t cap = enumeration_cap());

    std::uint64_t size() const { return size_; }
    std::size_t agents() const { return agents_; }
    std::size_t items() const { return items_; }

    /// The index-th owner vector.
    std::vector<AgentId> owners(std::uint64_t index) const;
    Allocation at(std::uint64_t index) const { return Allocation(agents_, owners(index)); }
    /// Inverse of owners().
    std::uint64_t index_of(std::span<const AgentId> owners) const;

private:
    std::size_t agents_;
    std::size_t items_;
    std::uint64_t size_;
};

/// Calls `visit` on each allocation in lexicographic order; stops early when
/// it returns false.
void enumerate_allocations(std::size_t agents, std::size_t items,
                           const std::function<bool(const Allocation&)>& visit,
                           std::uint64_t cap = enumeration_cap());

/// An allocation rejected under some notion and the first envious pair.
struct Violation {
    std::uint64_t index;  // owner-vector index
    std::size_t instance;  // which instance of a family ruled it out
    AgentId envier;
    AgentId envied;
};

struct SearchReport {
    std::uint64_t total = 0;
    /// Indices of satisfying allocations, ascending (enumeration order).
    std::vector<std::uint64_t> satisfying;
    std::uint64_t satisfying_count = 0;
    /// For impossibility reproductions: one entry per ruled-out allocation.
    std::vector<Violation> violations;
};

struct SearchOptions {
    bool first_only = false;        // stop at the first satisfying allocation
    bool pareto_optimal = false;    // additionally require integral PO
    std::uint64_t cap = enumeration_cap();
};

/// Allocations passing `notion` (and PO when requested). OpenMP-parallel
/// over owner-vector index; output is sorted, so identical to the serial
/// reference.
SearchReport find_allocations(const Instance& inst, Notion notion, const SearchOptions& opts = {});

/// True iff no integral allocation Pareto-dominates `alloc`.
bool is_pareto_optimal_integral(const Instance& inst, const Allocation& alloc, std::uint64_t cap = enumeration_cap());

/// First WEF1 allocation in enumeration order, if any.
std::optional<Allocation> wef1_exists(const Instance& inst, std::uint64_t cap = enumeration_cap());

/// Single-threaded reference implementations of the kernels above; kept for
/// cross-checking and benchmarking.
namespace serial {
SearchReport find_allocations(const Instance& inst, Notion notion, const SearchOptions& opts = {});
bool is_pareto_optimal_integral(const Instance& inst, const Allocation& alloc, std::uint64_t cap = enumeration_cap());
}  // namespace serial

/// True iff x Pareto-dominates y: every coordinate >=, one strictly >.
bool pareto_dominates(std::span<const Rational> x, std::span<const Rational> y);

/// Value vector (v_1(A_1), ..., v_n(A_n)).
std::vector<Rational> agent_values(const Instance& inst, std::span<const AgentId> owners);

// Reproductions of the worked impossibility examples.

/// The four two-agent instances (t = 1..4) over items g1, g2, g3, c with
/// identical valuations. Weights default to (1, 1). Requires 0 < eps < 1/4.
std::vector<Instance> ordinal_family(const Rational& eps, std::vector<Rational> weights = {Rational(1), Rational(1)});

struct OrdinalImpossibility {
    SearchReport report;              // total = 16, violations: one per allocation
    std::vector<SearchReport> per_instance;  // WEF1 sets of each instance
    bool intersection_empty = false;
    bool pairwise_compatible = false;  // all four rows mutually ordinally compatible
};

/// Enumerates all 16 allocations and records, for each, an instance t and an
/// envious pair ruling it out. Throws EpsilonOutOfRange outside (0, 1/4).
OrdinalImpossibility verify_ordinal_impossibility(const Rational& eps,
                                                  std::vector<Rational> weights = {Rational(1), Rational(1)});

/// Maximal interval of weight ratios r = w2 / w1. hi unset means +infinity.
struct RatioWindow {
    Rational lo;
    bool lo_closed = false;
    std::optional<Rational> hi;
    bool hi_closed = false;
    std::string str() const;
};

/// Exact set of ratios w2 / w1 for which the four-instance intersection is
/// empty. Every WEF1 comparison is linear in r, so checking each breakpoint
/// and one point between neighbours covers (0, infinity).
std::vector<RatioWindow> ordinal_impossibility_ratios(const Rational& eps);

/// Example with a fixed first assignment: the item that is pre-assigned, the
/// items still to place, and what enumeration found.
struct TwoPhaseCase {
    Instance instance;
    ItemId fixed_item;
    AgentId fixed_owner;
    bool fixed_part_wef1 = false;         // {fixed_item} -> fixed_owner alone is WEF1 on its part
    std::uint64_t completions = 0;         // allocations of the remaining items
    std::vector<std::uint64_t> wef1_completions;  // indices into the full owner space
    std::vector<Violation> violations;    // one per failing completion
    bool confirmed() const { return fixed_part_wef1 && wef1_completions.empty(); }
};

/// Items c, g1, g2 with w = (2, 3): agent disutilities 1 - eps and 1 + eps
/// for c, unit goods.
Instance chores_first_example(const Rational& eps);
/// Items g, c1, c2 with w = (2, 3): values 1 + eps and 1 - eps for g, unit chores.
Instance goods_first_example(const Rational& eps);

/// Fixes `item` with `owner` and enumerates every completion of the rest.
TwoPhaseCase extend_fixed_assignment(const Instance& inst, ItemId item, AgentId owner);

struct TwoPhaseReport {
    TwoPhaseCase chores_first;  // c -> agent 2
    TwoPhaseCase goods_first;   // g -> agent 2
    bool confirmed() const { return chores_first.confirmed() && goods_first.confirmed(); }
};

/// Throws EpsilonOutOfRange outside (0, 1).
TwoPhaseReport verify_two_phase_examples(const Rational& eps);

}  // namespace manna::search
