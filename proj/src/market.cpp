#include "manna/market.hpp"

#include <algorithm>

#include "manna/error.hpp"
#include "manna/fairness.hpp"

namespace manna {

FisherMarket::FisherMarket(Allocation allocation, std::vector<Rational> prices)
    : allocation_(std::move(allocation)), prices_(std::move(prices)) {
    if (allocation_->items() != prices_.size()) throw InputError("price vector length differs from item count");
    shares_.assign(allocation_->agents(), std::vector<Rational>(prices_.size()));
    for (ItemId j = 0; j < prices_.size(); ++j) shares_[allocation_->owner(j)][j] = Rational(1);
}

FisherMarket FisherMarket::fractional(std::vector<std::vector<Rational>> shares, std::vector<Rational> prices) {
    if (shares.empty()) throw InputError("market needs at least one agent");
    for (const auto& row : shares)
        if (row.size() != prices.size()) throw InputError("share row length differs from item count");
    for (ItemId j = 0; j < prices.size(); ++j) {
        Rational column;
        for (const auto& row : shares) {
            if (row[j] < Rational(0) || row[j] > Rational(1)) throw InputError("share outside [0, 1]");
            column += row[j];
        }
        if (column != Rational(1)) throw InputError("shares of item " + std::to_string(j + 1) + " do not sum to 1");
    }
    FisherMarket market;
    market.shares_ = std::move(shares);
    market.prices_ = std::move(prices);
    // Keep the integral view when every share is 0 or 1.
    std::vector<AgentId> owner(market.prices_.size());
    bool integral = true;
    for (ItemId j = 0; j < market.prices_.size(); ++j) {
        for (AgentId i = 0; i < market.shares_.size(); ++i) {
            if (market.shares_[i][j] == Rational(1)) owner[j] = i;
            else if (!market.shares_[i][j].is_zero()) integral = false;
        }
    }
    if (integral) market.allocation_.emplace(market.shares_.size(), std::move(owner));
    return market;
}

const Allocation& FisherMarket::allocation() const {
    if (!allocation_) throw InputError("market allocation is fractional");
    return *allocation_;
}

Rational FisherMarket::budget(AgentId i) const {
    Rational total;
    for (ItemId j = 0; j < prices_.size(); ++j)
        if (!shares_[i][j].is_zero()) total += prices_[j] * shares_[i][j];
    return total;
}

FisherMarket FisherMarket::with_prices(std::vector<Rational> prices) const {
    if (prices.size() != prices_.size()) throw InputError("price vector length differs from item count");
    FisherMarket out = *this;
    out.prices_ = std::move(prices);
    return out;
}

FisherMarket FisherMarket::with_transfer(ItemId j, AgentId to) const {
    auto owners = allocation().owners();
    owners[j] = to;
    return FisherMarket(Allocation(agents(), std::move(owners)), prices_);
}

// ---------------------------------------------------------------------------

bool BbbInterval::contains(const Rational& alpha) const {
    if (lo_open ? alpha <= lo : alpha < lo) return false;
    return !hi || alpha <= *hi;
}

bool BbbInterval::empty() const {
    if (!hi) return false;
    return lo_open ? *hi <= lo : *hi < lo;
}

std::string BbbInterval::str() const {
    return std::string(lo_open ? "(" : "[") + lo.str() + ", " + (hi ? hi->str() + "]" : std::string("inf)"));
}

std::string to_string(EquilibriumViolation::Kind kind) {
    switch (kind) {
        case EquilibriumViolation::Kind::PriceSign: return "PriceSign";
        case EquilibriumViolation::Kind::EmptyInterval: return "EmptyInterval";
        case EquilibriumViolation::Kind::HeldRatioConflict: return "HeldRatioConflict";
        case EquilibriumViolation::Kind::HeldNeutralNonzero: return "HeldNeutralNonzero";
    }
    return "?";
}

namespace {

int expected_sign(const ItemKind& kind) {
    if (kind.is_good()) return 1;
    if (kind.is_chore()) return -1;
    return 0;
}

BbbInterval bbb_interval(const Instance& inst, std::span<const Rational> prices, AgentId i) {
    BbbInterval interval;
    for (ItemId j = 0; j < prices.size(); ++j) {
        if (prices[j].is_zero()) continue;
        const Rational ratio = inst.value(i, j) / prices[j];
        if (prices[j].is_positive()) {
            if (ratio.is_positive() && (interval.lo_open || ratio > interval.lo)) {
                interval.lo = ratio;
                interval.lo_open = false;
            }
        } else if (!interval.hi || ratio < *interval.hi) {
            interval.hi = ratio;
        }
    }
    return interval;
}

}  // namespace

EquilibriumCheck check_equilibrium(const Instance& inst, const FisherMarket& market) {
    if (market.agents() != inst.agents() || market.items() != inst.items())
        throw InputError("market shape does not match instance");
    using Kind = EquilibriumViolation::Kind;
    EquilibriumCheck check;
    EquilibriumCertificate cert;
    const auto& prices = market.prices();

    for (ItemId j = 0; j < inst.items(); ++j) {
        const ItemKind kind = classify_item(inst, j);
        cert.price_signs.push_back(prices[j].sign());
        if (prices[j].sign() != expected_sign(kind))
            check.violations.push_back({Kind::PriceSign, std::nullopt, j,
                                        to_string(kind) + " " + inst.label(j) + " has price " + prices[j].str()});
    }

    for (AgentId i = 0; i < inst.agents(); ++i) {
        AgentBbb bbb{bbb_interval(inst, prices, i), std::nullopt};
        if (bbb.interval.empty())
            check.violations.push_back({Kind::EmptyInterval, i, std::nullopt,
                                        "agent " + std::to_string(i + 1) + " has interval " + bbb.interval.str()});
        for (ItemId j = 0; j < inst.items(); ++j) {
            if (market.shares()[i][j].is_zero()) continue;
            if (prices[j].is_zero()) {
                // v_i(j) = alpha_i * 0 is forced for held zero-price items.
                if (!inst.value(i, j).is_zero())
                    check.violations.push_back({Kind::HeldNeutralNonzero, i, j,
                                                "agent " + std::to_string(i + 1) + " holds " + inst.label(j) +
                                                    " valued " + inst.value(i, j).str() + " at price 0"});
                continue;
            }
            const Rational ratio = inst.value(i, j) / prices[j];
            if (!bbb.alpha) {
                bbb.alpha = ratio;
            } else if (*bbb.alpha != ratio) {
                check.violations.push_back({Kind::HeldRatioConflict, i, j,
                                            "agent " + std::to_string(i + 1) + " holds items with ratios " +
                                                bbb.alpha->str() + " and " + ratio.str()});
            }
        }
        if (bbb.alpha && !bbb.interval.contains(*bbb.alpha))
            check.violations.push_back({Kind::HeldRatioConflict, i, std::nullopt,
                                        "agent " + std::to_string(i + 1) + " ratio " + bbb.alpha->str() +
                                            " outside admissible " + bbb.interval.str()});
        cert.agents.push_back(std::move(bbb));
    }

    if (check.violations.empty()) check.certificate = std::move(cert);
    return check;
}

FisherMarket construct_welfare_equilibrium(const Instance& inst) {
    std::vector<AgentId> owner(inst.items());
    std::vector<Rational> prices(inst.items());
    for (ItemId j = 0; j < inst.items(); ++j) {
        AgentId best = 0;
        for (AgentId i = 1; i < inst.agents(); ++i)
            if (inst.value(i, j) > inst.value(best, j)) best = i;
        owner[j] = best;
        prices[j] = inst.value(best, j);
    }
    return FisherMarket(Allocation(inst.agents(), std::move(owner)), std::move(prices));
}

bool is_transferable(const Instance& inst, const FisherMarket& market, ItemId j, AgentId i) {
    if (!market.integral()) throw NotAnEquilibrium("transferability needs an integral market");
    const auto check = check_equilibrium(inst, market);
    if (!check.valid()) throw NotAnEquilibrium("market is not an equilibrium: " + check.violations.front().detail);
    const auto& alloc = market.allocation();
    const auto& prices = market.prices();
    if (alloc.owner(j) == i) throw InputError("item " + inst.label(j) + " already belongs to the agent");
    if (prices[j].is_zero()) throw InputError("item " + inst.label(j) + " is neutral");

    const Rational ratio = inst.value(i, j) / prices[j];
    for (ItemId k = 0; k < inst.items(); ++k) {
        if (alloc.owner(k) == i && !prices[k].is_zero()) return ratio == inst.value(i, k) / prices[k];
    }
    // Only neutral items (or nothing): the whole admissible interval.
    return bbb_interval(inst, prices, i).contains(ratio);
}

bool pwef1_envies(const FisherMarket& market, std::span<const Rational> weights, AgentId i, AgentId j) {
    const auto& alloc = market.allocation();
    const auto& prices = market.prices();
    const Rational bi = market.budget(i);
    const Rational bj = market.budget(j);
    const Rational& wi = weights[i];
    const Rational& wj = weights[j];
    // a/wi < b/wj with positive weights
    auto less = [&](const Rational& a, const Rational& b) { return a * wj < b * wi; };

    if (!less(bi, bj)) return false;
    for (ItemId g = 0; g < alloc.items(); ++g)
        if (alloc.owner(g) == j && !less(bi, bj - prices[g])) return false;
    for (ItemId c = 0; c < alloc.items(); ++c)
        if (alloc.owner(c) == i && !less(bi - prices[c], bj)) return false;
    return true;
}

// ---------------------------------------------------------------------------

namespace {

void invariant(bool ok, const std::string& what) {
    if (!ok) throw InternalInvariantViolation(what);
}

EquilibriumCertificate require_equilibrium(const Instance& inst, const FisherMarket& market, const std::string& when) {
    auto check = check_equilibrium(inst, market);
    invariant(check.valid(), "market is not an equilibrium " + when +
                                 (check.violations.empty() ? "" : ": " + check.violations.front().detail));
    return std::move(*check.certificate);
}

std::optional<Rational> max_of(std::optional<Rational> acc, const Rational& v) {
    if (!acc || v > *acc) return v;
    return acc;
}

}  // namespace

SolveResult solve_two_agent(const Instance& inst, const std::optional<FisherMarket>& start) {
    if (inst.agents() != 2) throw InputError("two-agent solver needs exactly 2 agents");
    FisherMarket market = start ? *start : construct_welfare_equilibrium(inst);
    if (!market.integral()) throw NotAnEquilibrium("starting market must be integral");
    {
        const auto check = check_equilibrium(inst, market);
        if (!check.valid())
            throw NotAnEquilibrium("starting market is not an equilibrium: " + check.violations.front().detail);
    }

    std::vector<ItemKind> kinds;
    for (ItemId j = 0; j < inst.items(); ++j) kinds.push_back(classify_item(inst, j));
    const auto weights = inst.weights();

    SolveResult result{market, SolveTrace{market, {}}};
    std::optional<std::pair<AgentId, AgentId>> first_pair;
    std::optional<std::size_t> last_progress;

    while (!check_allocation(inst, market.allocation(), Notion::WEF1).overall) {
        const std::size_t round = result.trace.iterations.size() + 1;
        const std::string at = " (iteration " + std::to_string(round) + ")";
        invariant(round <= inst.items(), "more than m iterations" + at);

        const Bundles bundles = market.allocation().bundles();
        std::vector<Rational> weighted{market.budget(0) / weights[0], market.budget(1) / weights[1]};
        invariant(weighted[0] != weighted[1], "equal weighted budgets at loop entry" + at);
        const AgentId least = weighted[0] < weighted[1] ? 0 : 1;
        const AgentId other = 1 - least;
        invariant(wef1_envies(inst, bundles, least, other).envies, "least-budget agent does not WEF1-envy" + at);
        if (!first_pair) first_pair = {least, other};
        invariant(*first_pair == std::pair{least, other}, "(least, other) changed between iterations" + at);

        std::size_t progress = 0;
        for (ItemId j : bundles[least]) progress += kinds[j].is_chore();
        for (ItemId j : bundles[other]) progress += kinds[j].is_good();
        invariant(!last_progress || progress < *last_progress, "progress measure did not decrease" + at);
        last_progress = progress;

        IterationRecord record{least, other, weighted, progress, std::nullopt, {}, {}, {}, {}};

        auto non_neutral = [&](const std::vector<ItemId>& b) {
            return std::any_of(b.begin(), b.end(), [&](ItemId j) { return !kinds[j].is_neutral(); });
        };
        if (non_neutral(bundles[least]) && non_neutral(bundles[other])) {
            const auto cert = require_equilibrium(inst, market, "before rescaling" + at);
            invariant(cert.agents[least].alpha && cert.agents[other].alpha, "bang-per-buck not pinned" + at);
            const Rational alpha_least = *cert.agents[least].alpha;
            const Rational alpha_other = *cert.agents[other].alpha;
            const auto& prices = market.prices();

            RescaleStep step{};
            for (ItemId g : bundles[other])
                if (kinds[g].is_good()) step.beta = max_of(step.beta, inst.value(least, g) / prices[g] / alpha_least);
            for (ItemId c : bundles[least])
                if (kinds[c].is_chore()) step.gamma = max_of(step.gamma, alpha_other / (inst.value(other, c) / prices[c]));
            invariant(step.beta || step.gamma, "both beta and gamma are -inf" + at);
            step.rho = step.beta && (!step.gamma || *step.beta >= *step.gamma) ? *step.beta : *step.gamma;
            invariant(step.rho.is_positive() && step.rho <= Rational(1), "rho = " + step.rho.str() + " outside (0, 1]" + at);

            std::vector<Rational> raised = prices;
            for (ItemId j : bundles[least]) raised[j] /= step.rho;
            step.rescaled = bundles[least];
            market = market.with_prices(std::move(raised));
            require_equilibrium(inst, market, "after rescaling" + at);
            record.rescale = std::move(step);
        }

        std::optional<TransferRecord> transfer;
        for (ItemId g : bundles[other]) {
            if (kinds[g].is_good() && is_transferable(inst, market, g, least)) {
                transfer = TransferRecord{g, other, least, true};
                break;
            }
        }
        if (!transfer) {
            for (ItemId c : bundles[least]) {
                if (kinds[c].is_chore() && is_transferable(inst, market, c, other)) {
                    transfer = TransferRecord{c, least, other, false};
                    break;
                }
            }
        }
        invariant(transfer.has_value(), "no transferable good or chore: error branch reached" + at);

        market = market.with_transfer(transfer->item, transfer->to);
        record.transfer = *transfer;
        record.certificate = require_equilibrium(inst, market, "after transfer" + at);
        record.prices = market.prices();
        record.bundles = market.allocation().bundles();
        result.trace.iterations.push_back(std::move(record));
    }

    require_equilibrium(inst, market, "at exit");
    result.market = std::move(market);
    return result;
}

}  // namespace manna
