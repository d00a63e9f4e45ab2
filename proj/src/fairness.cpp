#include "manna/fairness.hpp"

#include <algorithm>
#include <cctype>

#include "manna/error.hpp"

namespace manna {

std::string to_string(Notion notion) {
    switch (notion) {
        case Notion::WEF: return "wef";
        case Notion::WEF1: return "wef1";
        case Notion::WEF1T: return "wef1t";
    }
    return "?";
}

std::optional<Notion> parse_notion(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "wef") return Notion::WEF;
    if (lower == "wef1") return Notion::WEF1;
    if (lower == "wef1t") return Notion::WEF1T;
    return std::nullopt;
}

std::string to_string(Witness::Move move) {
    switch (move) {
        case Witness::Move::RemoveOwn: return "remove_own";
        case Witness::Move::RemoveOther: return "remove_other";
        case Witness::Move::TransferToOther: return "transfer_to_other";
        case Witness::Move::TransferToOwn: return "transfer_to_own";
    }
    return "?";
}

std::vector<std::pair<AgentId, AgentId>> EnvyReport::violations() const {
    std::vector<std::pair<AgentId, AgentId>> out;
    for (AgentId i = 0; i < pairs.size(); ++i)
        for (AgentId j = 0; j < pairs[i].size(); ++j)
            if (pairs[i][j].envies) out.emplace_back(i, j);
    return out;
}

namespace {

// Agent i's weighted comparison of her side against j's side:
// own/w_i >= other/w_j, cross-multiplied since weights are positive.
struct Side {
    const Rational& wi;
    const Rational& wj;
    bool satisfied(const Rational& own, const Rational& other) const { return own * wj >= other * wi; }
};

// Values of i's own side and of j's side after applying `w`.
std::pair<Rational, Rational> after_move(const Rational& own, const Rational& other, const Rational& vt,
                                         Witness::Move move, Ef1tReading reading) {
    switch (move) {
        case Witness::Move::RemoveOwn: return {own - vt, other};
        case Witness::Move::RemoveOther: return {own, other - vt};
        case Witness::Move::TransferToOther: return {own - vt, other + vt};
        case Witness::Move::TransferToOwn:
            if (reading == Ef1tReading::AsPrinted) return {own, other - vt};
            return {own + vt, other - vt};
    }
    return {own, other};
}

void require_pair(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j) {
    if (bundles.size() != inst.agents()) throw InputError("bundle count differs from agent count");
    if (i >= inst.agents() || j >= inst.agents() || i == j) throw InputError("envy check needs two distinct agents");
}

// Shared driver for the "up to one item" notions: envy, then the first
// rescuing move over A_i (ascending item index), then over A_j.
EnvyVerdict up_to_one(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j, Notion notion,
                      Witness::Move own_move, Witness::Move other_move, Ef1tReading reading) {
    require_pair(inst, bundles, i, j);
    EnvyVerdict verdict{notion, false, std::nullopt};
    const Side side{inst.weight(i), inst.weight(j)};
    const Rational own = bundle_value(inst, i, bundles[i]);
    const Rational other = bundle_value(inst, i, bundles[j]);
    if (side.satisfied(own, other)) return verdict;

    auto first_rescue = [&](const std::vector<ItemId>& bundle, Witness::Move move) -> std::optional<Witness> {
        std::vector<ItemId> sorted = bundle;
        std::sort(sorted.begin(), sorted.end());
        for (ItemId t : sorted) {
            auto [a, b] = after_move(own, other, inst.value(i, t), move, reading);
            if (side.satisfied(a, b)) return Witness{t, move};
        }
        return std::nullopt;
    };
    verdict.witness = first_rescue(bundles[i], own_move);
    if (!verdict.witness) verdict.witness = first_rescue(bundles[j], other_move);
    verdict.envies = !verdict.witness;
    return verdict;
}

}  // namespace

bool wef_envies(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j) {
    require_pair(inst, bundles, i, j);
    const Side side{inst.weight(i), inst.weight(j)};
    return !side.satisfied(bundle_value(inst, i, bundles[i]), bundle_value(inst, i, bundles[j]));
}

EnvyVerdict wef1_envies(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j) {
    return up_to_one(inst, bundles, i, j, Notion::WEF1, Witness::Move::RemoveOwn, Witness::Move::RemoveOther,
                     Ef1tReading::Transfer);
}

EnvyVerdict wef1t_envies(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j, Ef1tReading reading) {
    return up_to_one(inst, bundles, i, j, Notion::WEF1T, Witness::Move::TransferToOther,
                     Witness::Move::TransferToOwn, reading);
}

EnvyVerdict envies(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j, Notion notion) {
    switch (notion) {
        case Notion::WEF: return {Notion::WEF, wef_envies(inst, bundles, i, j), std::nullopt};
        case Notion::WEF1: return wef1_envies(inst, bundles, i, j);
        case Notion::WEF1T: return wef1t_envies(inst, bundles, i, j);
    }
    return {};
}

bool witness_rescues(const Instance& inst, const Bundles& bundles, AgentId i, AgentId j, const Witness& w,
                     Ef1tReading reading) {
    require_pair(inst, bundles, i, j);
    const bool from_own = w.move == Witness::Move::RemoveOwn || w.move == Witness::Move::TransferToOther;
    const auto& source = from_own ? bundles[i] : bundles[j];
    if (std::find(source.begin(), source.end(), w.item) == source.end()) return false;
    const Side side{inst.weight(i), inst.weight(j)};
    auto [a, b] = after_move(bundle_value(inst, i, bundles[i]), bundle_value(inst, i, bundles[j]),
                             inst.value(i, w.item), w.move, reading);
    return side.satisfied(a, b);
}

EnvyReport check_allocation(const Instance& inst, const Bundles& bundles, Notion notion) {
    if (bundles.size() != inst.agents()) throw InputError("bundle count differs from agent count");
    const std::size_t n = inst.agents();
    EnvyReport report;
    report.notion = notion;
    report.pairs.assign(n, std::vector<EnvyVerdict>(n, EnvyVerdict{notion, false, std::nullopt}));
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = 0; j < n; ++j) {
            if (i == j) continue;
            report.pairs[i][j] = envies(inst, bundles, i, j, notion);
            report.overall = report.overall && !report.pairs[i][j].envies;
        }
    }
    return report;
}

EnvyReport check_allocation(const Instance& inst, const Allocation& alloc, Notion notion) {
    require_compatible(inst, alloc);
    return check_allocation(inst, alloc.bundles(), notion);
}

}  // namespace manna
