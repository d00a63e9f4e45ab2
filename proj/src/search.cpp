#include "manna/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "manna/error.hpp"

namespace manna::search {

std::uint64_t enumeration_cap() {
    if (const char* env = std::getenv("MANNA_ENUM_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return kDefaultEnumCap;
}

std::optional<std::uint64_t> allocation_count(std::size_t agents, std::size_t items) {
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < items; ++k) {
        if (agents != 0 && total > UINT64_MAX / agents) return std::nullopt;
        total *= agents;
    }
    return total;
}

OwnerSpace::OwnerSpace(std::size_t agents, std::size_t items, std::uint64_t cap)
    : agents_(agents), items_(items), size_(0) {
    if (agents == 0) throw InputError("owner space needs at least one agent");
    const auto count = allocation_count(agents, items);
    if (!count || *count > cap)
        throw CapExceeded(std::to_string(agents) + "^" + std::to_string(items) +
                          " allocations exceed the enumeration cap of " + std::to_string(cap));
    size_ = *count;
}

std::vector<AgentId> OwnerSpace::owners(std::uint64_t index) const {
    std::vector<AgentId> out(items_);
    for (std::size_t k = items_; k-- > 0;) {
        out[k] = static_cast<AgentId>(index % agents_);
        index /= agents_;
    }
    return out;
}

std::uint64_t OwnerSpace::index_of(std::span<const AgentId> owners) const {
    std::uint64_t index = 0;
    for (AgentId a : owners) index = index * agents_ + a;
    return index;
}

void enumerate_allocations(std::size_t agents, std::size_t items, const std::function<bool(const Allocation&)>& visit,
                           std::uint64_t cap) {
    const OwnerSpace space(agents, items, cap);
    std::vector<AgentId> owners(items, 0);
    for (std::uint64_t k = 0; k < space.size(); ++k) {
        if (!visit(Allocation(agents, owners))) return;
        // odometer increment, last item fastest
        for (std::size_t pos = items; pos-- > 0;) {
            if (++owners[pos] < agents) break;
            owners[pos] = 0;
        }
    }
}

bool pareto_dominates(std::span<const Rational> x, std::span<const Rational> y) {
    bool strict = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < y[i]) return false;
        strict = strict || x[i] > y[i];
    }
    return strict;
}

std::vector<Rational> agent_values(const Instance& inst, std::span<const AgentId> owners) {
    std::vector<Rational> values(inst.agents());
    for (ItemId j = 0; j < owners.size(); ++j) values[owners[j]] += inst.value(owners[j], j);
    return values;
}

namespace {

Bundles bundles_of(std::size_t agents, std::span<const AgentId> owners) {
    Bundles b(agents);
    for (ItemId j = 0; j < owners.size(); ++j) b[owners[j]].push_back(j);
    return b;
}

// First envious ordered pair under `notion`, if any.
std::optional<std::pair<AgentId, AgentId>> first_envious_pair(const Instance& inst, const Bundles& bundles,
                                                              Notion notion) {
    for (AgentId i = 0; i < inst.agents(); ++i)
        for (AgentId j = 0; j < inst.agents(); ++j)
            if (i != j && envies(inst, bundles, i, j, notion).envies) return std::pair{i, j};
    return std::nullopt;
}

bool satisfies(const Instance& inst, std::span<const AgentId> owners, Notion notion) {
    return !first_envious_pair(inst, bundles_of(inst.agents(), owners), notion);
}

bool dominated_by_any(const Instance& inst, const OwnerSpace& space, std::span<const Rational> target) {
    std::atomic<bool> found{false};
    const auto total = static_cast<std::int64_t>(space.size());
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t k = 0; k < total; ++k) {
        if (found.load(std::memory_order_relaxed)) continue;
        const auto owners = space.owners(static_cast<std::uint64_t>(k));
        if (pareto_dominates(agent_values(inst, owners), target)) found.store(true, std::memory_order_relaxed);
    }
    return found.load();
}

}  // namespace

SearchReport find_allocations(const Instance& inst, Notion notion, const SearchOptions& opts) {
    const OwnerSpace space(inst.agents(), inst.items(), opts.cap);
    SearchReport report;
    report.total = space.size();

    // Blocks keep --first cheap; within a block every index is evaluated.
    const std::uint64_t block = opts.first_only ? 4096 : space.size();
    std::vector<char> flags;
    for (std::uint64_t start = 0; start < space.size(); start += block) {
        const std::uint64_t end = std::min(space.size(), start + block);
        flags.assign(end - start, 0);
        const auto count = static_cast<std::int64_t>(end - start);
        // PO filtering runs its own parallel loop; evaluate notion first in parallel.
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t off = 0; off < count; ++off) {
            const auto owners = space.owners(start + static_cast<std::uint64_t>(off));
            flags[static_cast<std::size_t>(off)] = satisfies(inst, owners, notion) ? 1 : 0;
        }
        for (std::uint64_t off = 0; off < end - start; ++off) {
            if (!flags[off]) continue;
            const std::uint64_t k = start + off;
            if (opts.pareto_optimal && dominated_by_any(inst, space, agent_values(inst, space.owners(k)))) continue;
            report.satisfying.push_back(k);
            if (opts.first_only) break;
        }
        if (opts.first_only && !report.satisfying.empty()) break;
    }
    report.satisfying_count = report.satisfying.size();
    return report;
}

bool is_pareto_optimal_integral(const Instance& inst, const Allocation& alloc, std::uint64_t cap) {
    require_compatible(inst, alloc);
    const OwnerSpace space(inst.agents(), inst.items(), cap);
    return !dominated_by_any(inst, space, agent_values(inst, alloc.owners()));
}

std::optional<Allocation> wef1_exists(const Instance& inst, std::uint64_t cap) {
    SearchOptions opts;
    opts.first_only = true;
    opts.cap = cap;
    const auto report = find_allocations(inst, Notion::WEF1, opts);
    if (report.satisfying.empty()) return std::nullopt;
    return OwnerSpace(inst.agents(), inst.items(), cap).at(report.satisfying.front());
}

namespace serial {

bool is_pareto_optimal_integral(const Instance& inst, const Allocation& alloc, std::uint64_t cap) {
    require_compatible(inst, alloc);
    const auto target = agent_values(inst, alloc.owners());
    bool dominated = false;
    enumerate_allocations(
        inst.agents(), inst.items(),
        [&](const Allocation& other) {
            dominated = pareto_dominates(agent_values(inst, other.owners()), target);
            return !dominated;
        },
        cap);
    return !dominated;
}

SearchReport find_allocations(const Instance& inst, Notion notion, const SearchOptions& opts) {
    SearchReport report;
    std::uint64_t index = 0;
    enumerate_allocations(
        inst.agents(), inst.items(),
        [&](const Allocation& alloc) {
            const std::uint64_t k = index++;
            if (!satisfies(inst, alloc.owners(), notion)) return true;
            if (opts.pareto_optimal && !serial::is_pareto_optimal_integral(inst, alloc, opts.cap)) return true;
            report.satisfying.push_back(k);
            return !opts.first_only;
        },
        opts.cap);
    report.total = OwnerSpace(inst.agents(), inst.items(), opts.cap).size();
    report.satisfying_count = report.satisfying.size();
    return report;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// Impossibility reproductions

std::vector<Instance> ordinal_family(const Rational& eps, std::vector<Rational> weights) {
    if (weights.size() != 2) throw InputError("the ordinal family has two agents");
    if (!(eps > Rational(0) && eps < Rational(1, 4)))
        throw EpsilonOutOfRange("eps must satisfy 0 < eps < 1/4, got " + eps.str());
    const Rational one(1);
    std::vector<Instance> family;
    for (int t = 1; t <= 4; ++t) {
        const Rational g3 = (t % 2 == 1) ? eps : one;
        const Rational c = (t <= 2) ? -eps : Rational(-3);
        std::vector<Rational> row{one + Rational(2) * eps, one + eps, g3, c};
        family.emplace_back(weights, std::vector<std::vector<Rational>>{row, row},
                            std::vector<std::string>{"g1", "g2", "g3", "c"});
    }
    return family;
}

OrdinalImpossibility verify_ordinal_impossibility(const Rational& eps, std::vector<Rational> weights) {
    const auto family = ordinal_family(eps, std::move(weights));
    OrdinalImpossibility out;

    out.pairwise_compatible = true;
    for (const auto& a : family)
        for (const auto& b : family)
            out.pairwise_compatible = out.pairwise_compatible && ordinally_compatible(a.row(0), b.row(0)) &&
                                      ordinally_compatible(a.row(1), b.row(1));

    for (const auto& inst : family) out.per_instance.push_back(serial::find_allocations(inst, Notion::WEF1));

    const OwnerSpace space(2, 4);
    out.report.total = space.size();
    for (std::uint64_t k = 0; k < space.size(); ++k) {
        const Bundles bundles = bundles_of(2, space.owners(k));
        bool ruled_out = false;
        for (std::size_t t = 0; t < family.size() && !ruled_out; ++t) {
            if (auto pair = first_envious_pair(family[t], bundles, Notion::WEF1)) {
                out.report.violations.push_back({k, t, pair->first, pair->second});
                ruled_out = true;
            }
        }
        if (!ruled_out) out.report.satisfying.push_back(k);
    }
    out.report.satisfying_count = out.report.satisfying.size();
    out.intersection_empty = out.report.satisfying.empty();
    return out;
}

std::string RatioWindow::str() const {
    return std::string(lo_closed ? "[" : "(") + lo.str() + ", " + (hi ? hi->str() : "inf") +
           (hi && hi_closed ? "]" : ")");
}

std::vector<RatioWindow> ordinal_impossibility_ratios(const Rational& eps) {
    const auto family = ordinal_family(eps);
    std::vector<Rational> points;
    for (const auto& inst : family) {
        std::vector<Rational> sums;
        for (unsigned mask = 1; mask < 16; ++mask) {
            Rational s(0);
            for (ItemId j = 0; j < 4; ++j)
                if (mask & (1u << j)) s += inst.value(0, j);
            if (!s.is_zero()) sums.push_back(s);
        }
        for (const auto& a : sums)
            for (const auto& b : sums)
                if (a.sign() == b.sign()) points.push_back(a / b);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    auto empty_at = [&](const Rational& r) {
        return verify_ordinal_impossibility(eps, {Rational(1), r}).intersection_empty;
    };
    // Samples alternate: open gap before points[0], points[0], gap, points[1], ...
    std::vector<RatioWindow> out;
    std::optional<RatioWindow> open;
    auto extend = [&](bool empty, const Rational& lo, bool lo_closed) {
        if (empty && !open) open = RatioWindow{lo, lo_closed, std::nullopt, false};
        if (!empty && open) {
            open->hi = lo;
            open->hi_closed = !lo_closed;
            out.push_back(*open);
            open.reset();
        }
    };
    Rational prev(0);
    for (const auto& p : points) {
        extend(empty_at((prev + p) / Rational(2)), prev, false);
        extend(empty_at(p), p, true);
        prev = p;
    }
    extend(empty_at(prev + Rational(1)), prev, false);
    if (open) out.push_back(*open);
    return out;
}

namespace {

void require_two_phase_eps(const Rational& eps) {
    if (!(eps > Rational(0) && eps < Rational(1)))
        throw EpsilonOutOfRange("eps must satisfy 0 < eps < 1, got " + eps.str());
}

}  // namespace

Instance chores_first_example(const Rational& eps) {
    require_two_phase_eps(eps);
    const Rational one(1);
    return Instance({Rational(2), Rational(3)}, {{eps - one, one, one}, {-(one + eps), one, one}},
                    std::vector<std::string>{"c", "g1", "g2"});
}

Instance goods_first_example(const Rational& eps) {
    require_two_phase_eps(eps);
    const Rational one(1);
    return Instance({Rational(2), Rational(3)}, {{one + eps, -one, -one}, {one - eps, -one, -one}},
                    std::vector<std::string>{"g", "c1", "c2"});
}

TwoPhaseCase extend_fixed_assignment(const Instance& inst, ItemId item, AgentId owner) {
    if (item >= inst.items() || owner >= inst.agents()) throw InputError("fixed assignment out of range");
    TwoPhaseCase out{inst, item, owner, false, 0, {}, {}};

    Bundles part(inst.agents());
    part[owner].push_back(item);
    out.fixed_part_wef1 = check_allocation(inst, part, Notion::WEF1).overall;

    const OwnerSpace space(inst.agents(), inst.items());
    for (std::uint64_t k = 0; k < space.size(); ++k) {
        const auto owners = space.owners(k);
        if (owners[item] != owner) continue;
        ++out.completions;
        if (auto pair = first_envious_pair(inst, bundles_of(inst.agents(), owners), Notion::WEF1))
            out.violations.push_back({k, 0, pair->first, pair->second});
        else
            out.wef1_completions.push_back(k);
    }
    return out;
}

TwoPhaseReport verify_two_phase_examples(const Rational& eps) {
    require_two_phase_eps(eps);
    return TwoPhaseReport{extend_fixed_assignment(chores_first_example(eps), 0, 1),
                          extend_fixed_assignment(goods_first_example(eps), 0, 1)};
}

}  // namespace manna::search
