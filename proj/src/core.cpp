#include "manna/core.hpp"

#include <algorithm>

#include "manna/error.hpp"

namespace manna {

std::string to_string(InstanceIssue::Kind kind) {
    switch (kind) {
        case InstanceIssue::Kind::NonPositiveWeight: return "NonPositiveWeight";
        case InstanceIssue::Kind::DimensionMismatch: return "DimensionMismatch";
        case InstanceIssue::Kind::MalformedRational: return "MalformedRational";
    }
    return "?";
}

Instance::Instance(std::vector<Rational> weights, std::vector<std::vector<Rational>> valuations,
                   std::optional<std::vector<std::string>> labels)
    : weights_(std::move(weights)), values_(std::move(valuations)), labels_(std::move(labels)) {
    if (weights_.empty()) throw InputError("instance needs at least one agent");
    if (values_.size() != weights_.size())
        throw InputError("valuation matrix has " + std::to_string(values_.size()) + " rows for " +
                         std::to_string(weights_.size()) + " agents");
    items_ = values_.front().size();
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!weights_[i].is_positive())
            throw InputError("weight of agent " + std::to_string(i + 1) + " is not positive");
        if (values_[i].size() != items_) throw InputError("valuation rows differ in length");
    }
    if (labels_ && labels_->size() != items_) throw InputError("item label count differs from item count");
}

std::string Instance::label(ItemId j) const {
    if (labels_) return (*labels_)[j];
    return std::to_string(j + 1);
}

Instance Instance::with_row_scaled(AgentId i, const Rational& factor) const {
    if (!factor.is_positive()) throw InputError("row scale factor must be positive");
    auto values = values_;
    for (auto& v : values[i]) v *= factor;
    return Instance(weights_, std::move(values), labels_);
}

Instance Instance::restricted_to(std::span<const ItemId> items) const {
    std::vector<std::vector<Rational>> values(agents());
    std::optional<std::vector<std::string>> labels;
    if (labels_) labels.emplace();
    for (ItemId j : items) {
        for (AgentId i = 0; i < agents(); ++i) values[i].push_back(values_[i][j]);
        if (labels) labels->push_back((*labels_)[j]);
    }
    return Instance(weights_, std::move(values), std::move(labels));
}

ValidationResult validate_instance(const RawInstance& raw) {
    ValidationResult result;
    auto issue = [&](InstanceIssue::Kind k, std::string detail, std::optional<std::size_t> idx = {}) {
        result.issues.push_back({k, std::move(detail), idx});
    };
    auto parse = [&](const std::string& text) -> Rational {
        auto r = Rational::parse(text);
        if (!r) {
            issue(InstanceIssue::Kind::MalformedRational, text);
            return Rational{};
        }
        return *r;
    };

    const std::size_t n = raw.weights.size();
    if (n == 0) issue(InstanceIssue::Kind::DimensionMismatch, "no agents");

    std::vector<Rational> weights;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t before = result.issues.size();
        Rational w = parse(raw.weights[i]);
        if (result.issues.size() == before && !w.is_positive())
            issue(InstanceIssue::Kind::NonPositiveWeight, "weight " + raw.weights[i], i);
        weights.push_back(std::move(w));
    }

    if (raw.valuations.size() != n)
        issue(InstanceIssue::Kind::DimensionMismatch,
              std::to_string(n) + " weights but " + std::to_string(raw.valuations.size()) + " valuation rows");
    const std::size_t m = raw.valuations.empty() ? (raw.items ? raw.items->size() : 0)
                                                 : raw.valuations.front().size();
    std::vector<std::vector<Rational>> values;
    for (std::size_t i = 0; i < raw.valuations.size(); ++i) {
        if (raw.valuations[i].size() != m)
            issue(InstanceIssue::Kind::DimensionMismatch,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(raw.valuations[i].size()) +
                      " entries, expected " + std::to_string(m));
        std::vector<Rational> row;
        for (const auto& text : raw.valuations[i]) row.push_back(parse(text));
        values.push_back(std::move(row));
    }
    if (raw.items && raw.items->size() != m)
        issue(InstanceIssue::Kind::DimensionMismatch,
              std::to_string(raw.items->size()) + " item labels for " + std::to_string(m) + " items");

    if (result.issues.empty()) result.instance.emplace(std::move(weights), std::move(values), raw.items);
    return result;
}

std::string to_string(const ItemKind& kind) {
    switch (kind.kind) {
        case ItemKind::Kind::Good: return kind.pure ? "good (pure)" : "good";
        case ItemKind::Kind::Neutral: return "neutral";
        case ItemKind::Kind::Chore: return "chore";
    }
    return "?";
}

ItemKind classify_item(const Instance& inst, ItemId j) {
    bool any_positive = false;
    bool any_negative = false;
    bool any_zero = false;
    for (AgentId i = 0; i < inst.agents(); ++i) {
        const int s = inst.value(i, j).sign();
        any_positive |= s > 0;
        any_negative |= s < 0;
        any_zero |= s == 0;
    }
    if (any_positive) return {ItemKind::Kind::Good, !any_negative};
    if (any_zero) return {ItemKind::Kind::Neutral};
    return {ItemKind::Kind::Chore};
}

Rational bundle_value(const Instance& inst, AgentId i, std::span<const ItemId> bundle) {
    Rational total;
    for (ItemId j : bundle) total += inst.value(i, j);
    return total;
}

bool ordinally_compatible(std::span<const Rational> u, std::span<const Rational> v) {
    if (u.size() != v.size()) return false;
    for (std::size_t t = 0; t < u.size(); ++t) {
        if (u[t].sign() != v[t].sign()) return false;
        for (std::size_t s = 0; s < u.size(); ++s) {
            if ((u[t] > u[s]) != (v[t] > v[s])) return false;
        }
    }
    return true;
}

Allocation::Allocation(std::size_t agents, std::vector<AgentId> owner) : agents_(agents), owner_(std::move(owner)) {
    for (AgentId a : owner_) {
        if (a >= agents_) throw InputError("allocation names agent " + std::to_string(a + 1) + " of " +
                                           std::to_string(agents_));
    }
}

Allocation Allocation::from_bundles(std::size_t items, const Bundles& bundles) {
    constexpr AgentId unset = static_cast<AgentId>(-1);
    std::vector<AgentId> owner(items, unset);
    for (AgentId i = 0; i < bundles.size(); ++i) {
        for (ItemId j : bundles[i]) {
            if (j >= items) throw InputError("bundle item " + std::to_string(j) + " out of range");
            if (owner[j] != unset) throw InputError("item " + std::to_string(j) + " appears in two bundles");
            owner[j] = i;
        }
    }
    if (std::find(owner.begin(), owner.end(), unset) != owner.end())
        throw InputError("bundles do not cover every item");
    return Allocation(bundles.size(), std::move(owner));
}

Bundles Allocation::bundles() const {
    Bundles out(agents_);
    for (ItemId j = 0; j < owner_.size(); ++j) out[owner_[j]].push_back(j);
    return out;
}

std::vector<ItemId> Allocation::bundle(AgentId i) const {
    std::vector<ItemId> out;
    for (ItemId j = 0; j < owner_.size(); ++j)
        if (owner_[j] == i) out.push_back(j);
    return out;
}

void require_compatible(const Instance& inst, const Allocation& alloc) {
    if (alloc.agents() != inst.agents() || alloc.items() != inst.items())
        throw InputError("allocation shape " + std::to_string(alloc.agents()) + "x" + std::to_string(alloc.items()) +
                         " does not match instance " + std::to_string(inst.agents()) + "x" +
                         std::to_string(inst.items()));
}

}  // namespace manna
