#pragma once

#include <optional>
#include <string>
#include <vector>

#include "manna/core.hpp"

namespace manna {

/// Allocation (integral or fractional) plus one price per item.
///
/// Fractional shares x[i][j] lie in [0, 1] and every column sums to 1. Only
/// integral markets flow through the two-agent solver; fractional ones exist
/// so the equilibrium check covers the general definition.
class FisherMarket {
public:
    /// Throws InputError on shape mismatch.
    FisherMarket(Allocation allocation, std::vector<Rational> prices);
    /// Throws InputError on shape mismatch, entries outside [0, 1], or
    /// columns not summing to 1.
    static FisherMarket fractional(std::vector<std::vector<Rational>> shares, std::vector<Rational> prices);

    bool integral() const { return allocation_.has_value(); }
    /// Throws InputError for fractional markets.
    const Allocation& allocation() const;
    const std::vector<std::vector<Rational>>& shares() const { return shares_; }
    const std::vector<Rational>& prices() const { return prices_; }
    std::size_t agents() const { return shares_.size(); }
    std::size_t items() const { return prices_.size(); }

    /// p(x_i), agent i's budget.
    Rational budget(AgentId i) const;

    FisherMarket with_prices(std::vector<Rational> prices) const;
    /// Integral markets only: item j moves to agent `to`.
    FisherMarket with_transfer(ItemId j, AgentId to) const;

    friend bool operator==(const FisherMarket&, const FisherMarket&) = default;

private:
    FisherMarket() = default;

    std::optional<Allocation> allocation_;
    std::vector<std::vector<Rational>> shares_;
    std::vector<Rational> prices_;
};

/// Admissible best-bang-per-buck values: (0, inf) intersected with
/// [max_{p_j>0} v_i(j)/p_j, min_{p_j<0} v_i(j)/p_j].
struct BbbInterval {
    Rational lo;            // 0 when no positive-price item gives a positive ratio
    bool lo_open = true;    // open exactly when lo comes from the (0, inf) bound
    std::optional<Rational> hi;  // nullopt = +inf; always closed

    bool contains(const Rational& alpha) const;
    bool empty() const;
    std::string str() const;
};

struct AgentBbb {
    BbbInterval interval;
    /// Pinned value when the agent holds a good or chore; an agent holding
    /// only neutral items keeps the whole interval.
    std::optional<Rational> alpha;
};

struct EquilibriumCertificate {
    std::vector<AgentBbb> agents;
    std::vector<int> price_signs;
};

struct EquilibriumViolation {
    enum class Kind {
        PriceSign,          // p_j sign does not match the item's kind
        EmptyInterval,      // no admissible alpha_i > 0
        HeldRatioConflict,  // held items give different ratios, or the ratio is not admissible
        HeldNeutralNonzero, // agent holds a neutral item she values < 0
    };
    Kind kind;
    std::optional<AgentId> agent;
    std::optional<ItemId> item;
    std::string detail;
};

std::string to_string(EquilibriumViolation::Kind kind);

struct EquilibriumCheck {
    std::optional<EquilibriumCertificate> certificate;
    std::vector<EquilibriumViolation> violations;
    bool valid() const { return certificate.has_value(); }
};

/// Evaluates the market-equilibrium conditions exactly. Violations are data.
EquilibriumCheck check_equilibrium(const Instance& inst, const FisherMarket& market);

/// Welfare-maximizing allocation (ties to the lowest agent index) priced at
/// the winner's value.
FisherMarket construct_welfare_equilibrium(const Instance& inst);

/// Whether moving item j (held by someone else, p_j != 0) to agent i keeps
/// the integral market an equilibrium. Throws NotAnEquilibrium when the
/// market is not a valid integral equilibrium, InputError when j is held by
/// i or neutral.
bool is_transferable(const Instance& inst, const FisherMarket& market, ItemId j, AgentId i);

/// All three price-envy conditions, quantifiers over whole bundles.
bool pwef1_envies(const FisherMarket& market, std::span<const Rational> weights, AgentId i, AgentId j);

// Two-agent local search

struct RescaleStep {
    std::optional<Rational> beta;   // nullopt = -inf (empty max)
    std::optional<Rational> gamma;  // nullopt = -inf
    Rational rho;
    std::vector<ItemId> rescaled;  // items of the least-budget agent
};

struct TransferRecord {
    ItemId item;
    AgentId from;
    AgentId to;
    bool good;  // good moved to the least-budget agent, else chore moved away
};

struct IterationRecord {
    AgentId least;  // argmin weighted budget
    AgentId other;
    std::vector<Rational> weighted_budgets;  // p(A_i)/w_i at loop entry
    std::size_t progress;                    // |A_least & C| + |A_other & G| at loop entry
    std::optional<RescaleStep> rescale;      // empty when the rescale branch is skipped
    TransferRecord transfer;
    std::vector<Rational> prices;            // after the iteration
    Bundles bundles;                         // after the iteration
    EquilibriumCertificate certificate;      // of the post-iteration market
};

struct SolveTrace {
    FisherMarket start;
    std::vector<IterationRecord> iterations;
};

struct SolveResult {
    FisherMarket market;
    SolveTrace trace;
};

/// WEF1 + fPO for two agents: raise the prices of the least-budget agent
/// until a good can move to her or a chore can move away, transfer, repeat.
///
/// Starts from `start` when given (must be a valid integral equilibrium, else
/// NotAnEquilibrium) and from the welfare-maximizing equilibrium otherwise.
/// Every solver invariant is asserted; a failure throws
/// InternalInvariantViolation.
SolveResult solve_two_agent(const Instance& inst, const std::optional<FisherMarket>& start = std::nullopt);

}  // namespace manna
