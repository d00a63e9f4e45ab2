#pragma once

#include <optional>
#include <string>
#include <vector>

#include "manna/core.hpp"

namespace manna {

enum class Notion { WEF, WEF1, WEF1T };

std::string to_string(Notion notion);
/// Accepts "wef", "wef1", "wef1t" (case-insensitive).
std::optional<Notion> parse_notion(std::string_view text);

/// The single-item move that rescues an envious pair.
struct Witness {
    enum class Move {
        RemoveOwn,        // drop t from the envier's bundle
        RemoveOther,      // drop t from the envied bundle
        TransferToOther,  // move t from the envier to the envied agent
        TransferToOwn,    // move t from the envied agent to the envier
    };
    ItemId item;
    Move move;
    friend bool operator==(const Witness&, const Witness&) = default;
};

std::string to_string(Witness::Move move);

struct EnvyVerdict {
    Notion notion = Notion::WEF;
    bool envies = false;
    /// Present iff plain envy holds but a single removal/transfer rescues it.
    std::optional<Witness> witness;
};

struct EnvyReport {
    Notion notion = Notion::WEF;
    std::vector<std::vector<EnvyVerdict>> pairs;  // pairs[i][j]: does i envy j
    bool overall = true;                          // no ordered pair envies

    /// Ordered pairs (i, j) that envy under the notion.
    std::vector<std::pair<AgentId, AgentId>> violations() const;
};

/// How to read the second quantifier family of EF1T-envy.
///
/// `Transfer` moves t from A_j into A_i (compares A_i + t against A_j - t),
/// which is what "one transfer" means and what the composition theorem needs.
/// `AsPrinted` compares A_i - t against A_j - t with t in A_j, so A_i is
/// unchanged and the family collapses to the WEF1 removal from A_j.
enum class Ef1tReading { Transfer, AsPrinted };

/// v_i(A_i)/w_i < v_i(A_j)/w_j.
bool wef_envies(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j);

/// Envy that survives every single removal from A_i and from A_j.
EnvyVerdict wef1_envies(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j);

/// Envy that survives every single-item transfer between A_i and A_j.
EnvyVerdict wef1t_envies(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j,
                         Ef1tReading reading = Ef1tReading::Transfer);

EnvyVerdict envies(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j, Notion notion);

/// Re-evaluates the defining inequality at `w`: true iff the move leaves i
/// with weighted value at least that of j.
bool witness_rescues(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j, const Witness& w,
                     Ef1tReading reading = Ef1tReading::Transfer);

/// Full ordered-pair matrix. `bundles` may cover a subset of the items
/// (used to check partial allocations on their part only).
EnvyReport check_allocation(const Instance& inst, const Bundles& bundles, Notion notion);
EnvyReport check_allocation(const Instance& inst, const Allocation& alloc, Notion notion);

}  // namespace manna
