#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "manna/rational.hpp"

namespace manna {

using AgentId = std::size_t;
using ItemId = std::size_t;

/// Item sets per agent; bundles[i] lists the items held by agent i.
using Bundles = std::vector<std::vector<ItemId>>;

/// Instance data as read from a file, before any validation.
struct RawInstance {
    std::vector<std::string> weights;
    std::optional<std::vector<std::string>> items;
    std::vector<std::vector<std::string>> valuations;
};

struct InstanceIssue {
    enum class Kind { NonPositiveWeight, DimensionMismatch, MalformedRational };
    Kind kind;
    std::string detail;
    std::optional<std::size_t> index;  // agent index for NonPositiveWeight
};

std::string to_string(InstanceIssue::Kind kind);

/// Fair division instance: n agents with positive weights, m items and an
/// additive valuation matrix. Immutable after construction.
class Instance {
public:
    /// Throws InputError if weights are not all positive or the matrix is
    /// not n x m.
    Instance(std::vector<Rational> weights, std::vector<std::vector<Rational>> valuations,
             std::optional<std::vector<std::string>> labels = std::nullopt);

    std::size_t agents() const { return weights_.size(); }
    std::size_t items() const { return items_; }

    const Rational& weight(AgentId i) const { return weights_[i]; }
    std::span<const Rational> weights() const { return weights_; }
    const Rational& value(AgentId i, ItemId j) const { return values_[i][j]; }
    std::span<const Rational> row(AgentId i) const { return values_[i]; }
    const std::vector<std::vector<Rational>>& valuations() const { return values_; }

    const std::optional<std::vector<std::string>>& labels() const { return labels_; }
    /// Label for reports; falls back to the 1-based item number.
    std::string label(ItemId j) const;

    /// Copy with agent i's valuation row multiplied by `factor` (> 0).
    Instance with_row_scaled(AgentId i, const Rational& factor) const;
    /// Sub-instance on the given items, in the given order. Labels follow.
    Instance restricted_to(std::span<const ItemId> items) const;

private:
    std::vector<Rational> weights_;
    std::vector<std::vector<Rational>> values_;
    std::optional<std::vector<std::string>> labels_;
    std::size_t items_ = 0;
};

struct ValidationResult {
    std::optional<Instance> instance;
    std::vector<InstanceIssue> issues;

    bool ok() const { return instance.has_value(); }
};

/// Checks weights > 0, matrix dimensions, and canonical rational spelling.
/// Collects every issue rather than stopping at the first.
ValidationResult validate_instance(const RawInstance& raw);

struct ItemKind {
    enum class Kind { Good, Neutral, Chore };
    Kind kind;
    bool pure = false;  // meaningful for goods only

    bool is_good() const { return kind == Kind::Good; }
    bool is_neutral() const { return kind == Kind::Neutral; }
    bool is_chore() const { return kind == Kind::Chore; }
    friend bool operator==(const ItemKind&, const ItemKind&) = default;
};

std::string to_string(const ItemKind& kind);

/// Good if some agent values j > 0 (pure iff nobody values it < 0),
/// neutral if the maximum value is exactly 0, chore if every value is < 0.
ItemKind classify_item(const Instance& inst, ItemId j);

/// Exact additive value v_i(bundle).
Rational bundle_value(const Instance& inst, AgentId i, std::span<const ItemId> bundle);

/// Same pairwise order and same signs item by item. Rows must have equal length.
bool ordinally_compatible(std::span<const Rational> u, std::span<const Rational> v);

/// Integral allocation: owner[j] is the agent holding item j.
class Allocation {
public:
    Allocation() = default;
    /// Throws InputError if some owner index is >= agents.
    Allocation(std::size_t agents, std::vector<AgentId> owner);

    /// Throws InputError unless bundles partition [0, items).
    static Allocation from_bundles(std::size_t items, const Bundles& bundles);

    std::size_t agents() const { return agents_; }
    std::size_t items() const { return owner_.size(); }
    AgentId owner(ItemId j) const { return owner_[j]; }
    const std::vector<AgentId>& owners() const { return owner_; }

    /// Items of each agent in increasing index order.
    Bundles bundles() const;
    std::vector<ItemId> bundle(AgentId i) const;

    friend bool operator==(const Allocation&, const Allocation&) = default;

private:
    std::size_t agents_ = 0;
    std::vector<AgentId> owner_;
};

/// Throws InputError when `alloc` does not match the instance's shape.
void require_compatible(const Instance& inst, const Allocation& alloc);

}  // namespace manna
