#include "manna/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "manna/error.hpp"
#include "manna/generate.hpp"
#include "manna/io.hpp"

namespace manna::cli {

namespace {

using io::Json;

struct Output {
    std::ostream& out;
    bool json = false;

    void emit(const Json& doc, const std::string& human) const {
        if (json)
            out << doc.dump(2) << "\n";
        else
            out << human;
    }
};

Rational rational_flag(const std::string& text, const char* flag) {
    auto r = Rational::parse_lenient(text);
    if (!r) throw MalformedRational(text + " (" + flag + ")");
    return *r;
}

// "lo:hi" with rational bounds.
std::pair<Rational, Rational> range_flag(const std::string& text, const char* flag) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InputError(std::string(flag) + " expects lo:hi, got " + text);
    return {rational_flag(text.substr(0, colon), flag), rational_flag(text.substr(colon + 1), flag)};
}

std::string bundle_text(const Instance& inst, const std::vector<ItemId>& bundle) {
    std::string s = "{";
    for (std::size_t k = 0; k < bundle.size(); ++k) s += (k ? ", " : "") + inst.label(bundle[k]);
    return s + "}";
}

std::string bundles_text(const Instance& inst, const Bundles& bundles) {
    std::string s;
    for (AgentId i = 0; i < bundles.size(); ++i)
        s += "  agent " + std::to_string(i + 1) + ": " + bundle_text(inst, bundles[i]) + "\n";
    return s;
}

std::string report_text(const EnvyReport& report) {
    std::string name = to_string(report.notion);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (report.overall) return name + ": pass\n";
    std::string s = name + ": FAIL\n";
    for (auto [i, j] : report.violations())
        s += "  agent " + std::to_string(i + 1) + " " + name + "-envies agent " + std::to_string(j + 1) + "\n";
    return s;
}

Notion notion_flag(const std::string& text) {
    auto n = parse_notion(text);
    if (!n) throw InputError("unknown notion \"" + text + "\" (expected wef, wef1 or wef1t)");
    return *n;
}

// ---------------------------------------------------------------------------

int cmd_check(const Output& o, const std::string& instance_path, const std::string& allocation_path,
              const std::string& notion_text) {
    const Instance inst = io::load_instance(instance_path);
    const Allocation alloc = io::allocation_from_json(io::read_json_file(allocation_path), inst);
    const EnvyReport report = check_allocation(inst, alloc, notion_flag(notion_text));
    Json doc = io::report_header(inst);
    doc["report"] = io::to_json(report);
    o.emit(doc, report_text(report));
    return report.overall ? kOk : kNegative;
}

int cmd_solve_wef1t(const Output& o, const std::string& instance_path) {
    const Instance inst = io::load_instance(instance_path);
    const Composition comp = compose_wef1t(inst);
    const EnvyReport wef1 = check_allocation(inst, comp.allocation, Notion::WEF1);

    Json doc = io::report_header(inst);
    doc["allocation"] = io::to_json(comp.allocation);
    doc["goods_part"] = io::to_json(comp.goods);
    doc["chores_part"] = io::to_json(comp.chores);
    doc["reports"] = Json{{"goods_wef1", io::to_json(comp.goods.check)},
                          {"chores_wef1", io::to_json(comp.chores.check)},
                          {"wef1t", io::to_json(comp.report)},
                          {"wef1", io::to_json(wef1)}};

    std::string human = "composed allocation:\n" + bundles_text(inst, comp.allocation.bundles());
    human += "goods part " + std::string(comp.goods.repaired ? "(repaired) " : "") + report_text(comp.goods.check);
    human += "chores part " + std::string(comp.chores.repaired ? "(repaired) " : "") + report_text(comp.chores.check);
    human += report_text(comp.report) + report_text(wef1);
    o.emit(doc, human);
    return comp.report.overall ? kOk : kNegative;
}

int cmd_solve_market2(const Output& o, const std::string& instance_path, const std::string& start_path,
                      const std::string& trace_path) {
    const Instance inst = io::load_instance(instance_path);
    std::optional<FisherMarket> start;
    if (!start_path.empty()) start = io::market_from_json(io::read_json_file(start_path), inst);
    const SolveResult result = solve_two_agent(inst, start);
    if (!trace_path.empty()) {
        Json trace = io::report_header(inst);
        trace["trace"] = io::to_json(result.trace);
        io::write_text_file(trace_path, trace.dump(2) + "\n");
    }
    const EnvyReport wef1 = check_allocation(inst, result.market.allocation(), Notion::WEF1);
    const EquilibriumCheck eq = check_equilibrium(inst, result.market);

    Json doc = io::report_header(inst);
    doc["market"] = io::to_json(result.market);
    doc["iterations"] = result.trace.iterations.size();
    doc["wef1"] = io::to_json(wef1);
    doc["equilibrium"] = io::to_json(eq);

    std::string human = "market equilibrium after " + std::to_string(result.trace.iterations.size()) +
                        " iteration(s):\n" + bundles_text(inst, result.market.allocation().bundles()) + "  prices:";
    for (const auto& p : result.market.prices()) human += " " + p.str();
    human += "\n" + report_text(wef1) + "equilibrium: " + (eq.valid() ? "valid (fPO)" : "INVALID") + "\n";
    o.emit(doc, human);
    return wef1.overall && eq.valid() ? kOk : kInternalError;
}

int cmd_search(const Output& o, const std::string& instance_path, const std::string& notion_text, bool all,
               bool first, bool po, std::uint64_t cap) {
    if (all && first) throw InputError("--all and --first are mutually exclusive");
    const Instance inst = io::load_instance(instance_path);
    const Notion notion = notion_flag(notion_text);
    search::SearchOptions opts;
    opts.first_only = first;
    opts.pareto_optimal = po;
    opts.cap = cap;
    const auto report = search::find_allocations(inst, notion, opts);
    const search::OwnerSpace space(inst.agents(), inst.items(), cap);

    Json doc = io::report_header(inst);
    doc["notion"] = to_string(notion);
    doc["pareto_optimal"] = po;
    doc["search"] = io::to_json(report, space);

    std::string human = std::to_string(report.satisfying_count) + (first ? " (first only)" : "") + " of " +
                        std::to_string(report.total) + " allocations satisfy " + to_string(notion) +
                        (po ? " + PO" : "") + "\n";
    for (std::size_t k = 0; k < std::min<std::size_t>(report.satisfying.size(), 10); ++k)
        human += "allocation #" + std::to_string(report.satisfying[k]) + ":\n" +
                 bundles_text(inst, space.at(report.satisfying[k]).bundles());
    o.emit(doc, human);
    return report.satisfying.empty() ? kNegative : kOk;
}

int cmd_repro_thm3(const Output& o, const std::string& eps_text, const std::string& weights_text) {
    const Rational eps = rational_flag(eps_text, "--eps");
    std::vector<Rational> weights;
    const auto comma = weights_text.find(',');
    if (comma == std::string::npos) throw InputError("--weights expects w1,w2");
    weights.push_back(rational_flag(weights_text.substr(0, comma), "--weights"));
    weights.push_back(rational_flag(weights_text.substr(comma + 1), "--weights"));
    if (!weights[0].is_positive() || !weights[1].is_positive()) throw InputError("--weights must be positive");
    const auto result = search::verify_ordinal_impossibility(eps, weights);
    const auto windows = search::ordinal_impossibility_ratios(eps);
    const search::OwnerSpace space(2, 4);
    Json hashes = Json::array();
    for (const auto& inst : search::ordinal_family(eps, weights)) hashes.push_back(io::instance_hash(inst));
    Json window_json = Json::array();
    for (const auto& w : windows) window_json.push_back(w.str());

    Json per = Json::array();
    for (const auto& r : result.per_instance) per.push_back(io::to_json(r, space));
    Json doc{{"version", std::string(io::kVersion)},
             {"instance_hashes", hashes},
             {"eps", eps.str()},
             {"weights", Json::array({weights[0].str(), weights[1].str()})},
             {"empty_intersection_ratios", window_json},
             {"pairwise_ordinally_compatible", result.pairwise_compatible},
             {"intersection_empty", result.intersection_empty},
             {"allocations", io::to_json(result.report, space)},
             {"per_instance_wef1", per}};

    std::string human = "eps = " + eps.str() + ", w = (" + weights[0].str() + ", " + weights[1].str() +
                        "): " + std::to_string(result.report.violations.size()) + "/" +
                        std::to_string(result.report.total) + " allocations ruled out; ";
    human += result.intersection_empty ? "intersection empty\n" : "intersection NOT empty\n";
    human += "w2/w1 ratios with an empty intersection:";
    for (const auto& w : windows) human += " " + w.str();
    human += windows.empty() ? " none\n" : "\n";
    for (const auto& v : result.report.violations) {
        const auto owners = space.owners(v.index);
        std::string who;
        for (AgentId a : owners) who += std::to_string(a + 1);
        human += "  owners " + who + ": agent " + std::to_string(v.envier + 1) + " WEF1-envies agent " +
                 std::to_string(v.envied + 1) + " in instance t=" + std::to_string(v.instance + 1) + "\n";
    }
    o.emit(doc, human);
    return result.intersection_empty && result.pairwise_compatible ? kOk : kNegative;
}

Json two_phase_json(const search::TwoPhaseCase& c) {
    const search::OwnerSpace space(c.instance.agents(), c.instance.items());
    Json wef1 = Json::array();
    for (auto k : c.wef1_completions) wef1.push_back(Json{{"index", k}, {"owners", space.owners(k)}});
    Json violations = Json::array();
    for (const auto& v : c.violations)
        violations.push_back(Json{{"index", v.index}, {"owners", space.owners(v.index)}, {"envier", v.envier}, {"envied", v.envied}});
    return Json{{"instance_hash", io::instance_hash(c.instance)},
                {"fixed_item", c.fixed_item},
                {"fixed_owner", c.fixed_owner},
                {"fixed_part_wef1", c.fixed_part_wef1},
                {"completions", c.completions},
                {"wef1_completions", wef1},
                {"violations", violations},
                {"confirmed", c.confirmed()}};
}

std::string two_phase_text(const char* name, const search::TwoPhaseCase& c) {
    return std::string(name) + ": " + c.instance.label(c.fixed_item) + " -> agent " + std::to_string(c.fixed_owner + 1) +
           " is WEF1 on its part: " + (c.fixed_part_wef1 ? "yes" : "no") + "; " +
           std::to_string(c.completions - c.wef1_completions.size()) + "/" + std::to_string(c.completions) +
           " completions fail WEF1" + (c.confirmed() ? " (confirmed)" : " (NOT confirmed)") + "\n";
}

int cmd_repro_twophase(const Output& o, const std::string& eps_text) {
    const Rational eps = rational_flag(eps_text, "--eps");
    const auto report = search::verify_two_phase_examples(eps);
    Json doc{{"version", std::string(io::kVersion)},
             {"eps", eps.str()},
             {"chores_first", two_phase_json(report.chores_first)},
             {"goods_first", two_phase_json(report.goods_first)},
             {"confirmed", report.confirmed()}};
    o.emit(doc, "eps = " + eps.str() + "\n" + two_phase_text("chores first", report.chores_first) +
                    two_phase_text("goods first", report.goods_first));
    return report.confirmed() ? kOk : kNegative;
}

struct GenFlags {
    std::size_t agents = 2;
    std::size_t items = 6;
    std::uint64_t seed = 0;
    std::string values = "-10:10";
    long value_den = 1;
    std::string weights = "1:5";
    long weight_den = 1;
    std::optional<double> goods, chores, neutral;
    std::string out_path;
};

int cmd_gen(const Output& o, const GenFlags& f) {
    GenConfig cfg;
    cfg.agents = f.agents;
    cfg.items = f.items;
    cfg.seed = f.seed;
    std::tie(cfg.value_lo, cfg.value_hi) = range_flag(f.values, "--values");
    std::tie(cfg.weight_lo, cfg.weight_hi) = range_flag(f.weights, "--weights");
    cfg.value_denominator = f.value_den;
    cfg.weight_denominator = f.weight_den;
    if (f.goods || f.chores || f.neutral) cfg.mix = ItemMix{f.goods.value_or(0), f.chores.value_or(0), f.neutral.value_or(0)};
    const std::string text = io::serialize_instance(generate_instance(cfg));
    if (f.out_path.empty())
        o.out << text;
    else
        io::write_text_file(f.out_path, text);
    return kOk;
}

void report_error(std::ostream& err, bool json, const char* kind, const std::string& message, int code) {
    if (json)
        err << Json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
    else
        err << "error: " << message << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted fair division of mixed manna: checkers, solvers and exhaustive search", "manna"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "Machine-readable JSON on stdout (and errors on stderr)");

    std::function<int(const Output&)> action;

    std::string instance_path, allocation_path, notion = "wef1";
    auto* check = app.add_subcommand("check", "Check an allocation against wef, wef1 or wef1t");
    check->add_option("--instance", instance_path, "Instance JSON")->required();
    check->add_option("--allocation", allocation_path, "Allocation JSON")->required();
    check->add_option("--notion", notion, "wef | wef1 | wef1t");
    check->callback([&] { action = [&](const Output& o) { return cmd_check(o, instance_path, allocation_path, notion); }; });

    auto* solve = app.add_subcommand("solve", "Run a solver");
    solve->require_subcommand(1);
    solve->fallthrough();
    auto* wef1t = solve->add_subcommand("wef1t", "Goods/chores picking sequences composed into a WEF1T allocation");
    wef1t->add_option("--instance", instance_path, "Instance JSON")->required();
    wef1t->callback([&] { action = [&](const Output& o) { return cmd_solve_wef1t(o, instance_path); }; });
    std::string start_path, trace_path;
    auto* market2 = solve->add_subcommand("market2", "Two-agent WEF1 + fPO market local search");
    market2->add_option("--instance", instance_path, "Instance JSON")->required();
    market2->add_option("--start", start_path, "Starting equilibrium JSON {bundles, prices}");
    market2->add_option("--trace", trace_path, "Write the per-iteration trace here");
    market2->callback([&] {
        action = [&](const Output& o) { return cmd_solve_market2(o, instance_path, start_path, trace_path); };
    });

    bool all = false, first = false, po = false;
    std::uint64_t cap = search::enumeration_cap();
    auto* search_cmd = app.add_subcommand("search", "Exhaustive search over all n^m allocations");
    search_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
    search_cmd->add_option("--notion", notion, "wef | wef1 | wef1t");
    search_cmd->add_flag("--all", all, "Report every satisfying allocation (default)");
    search_cmd->add_flag("--first", first, "Stop at the first satisfying allocation");
    search_cmd->add_flag("--po", po, "Also require integral Pareto optimality");
    search_cmd->add_option("--cap", cap, "Enumeration cap (default 2^24 or MANNA_ENUM_CAP)");
    search_cmd->callback([&] {
        action = [&](const Output& o) { return cmd_search(o, instance_path, notion, all, first, po, cap); };
    });

    std::string eps;
    auto* repro = app.add_subcommand("repro", "Reproduce the worked impossibility examples");
    repro->require_subcommand(1);
    repro->fallthrough();
    auto* thm3 = repro->add_subcommand("thm3", "Four ordinally compatible instances with no common WEF1 allocation");
    std::string thm3_weights = "1,1";
    thm3->add_option("--eps", eps, "0 < eps < 1/4")->required();
    thm3->add_option("--weights", thm3_weights, "Agent weights w1,w2 (default 1,1)");
    thm3->callback([&] { action = [&](const Output& o) { return cmd_repro_thm3(o, eps, thm3_weights); }; });
    auto* twophase = repro->add_subcommand("twophase", "Chores-first and goods-first extension counterexamples");
    twophase->add_option("--eps", eps, "0 < eps < 1")->required();
    twophase->callback([&] { action = [&](const Output& o) { return cmd_repro_twophase(o, eps); }; });

    GenFlags gen_flags;
    auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
    gen->add_option("--agents", gen_flags.agents, "Number of agents")->required();
    gen->add_option("--items", gen_flags.items, "Number of items")->required();
    gen->add_option("--seed", gen_flags.seed, "64-bit seed")->required();
    gen->add_option("--values", gen_flags.values, "Value range lo:hi (rationals)");
    gen->add_option("--value-den", gen_flags.value_den, "Values are multiples of 1/den");
    gen->add_option("--weights", gen_flags.weights, "Weight range lo:hi (rationals, lo > 0)");
    gen->add_option("--weight-den", gen_flags.weight_den, "Weights are multiples of 1/den");
    gen->add_option("--goods", gen_flags.goods, "Relative probability of a good column");
    gen->add_option("--chores", gen_flags.chores, "Relative probability of a chore column");
    gen->add_option("--neutral", gen_flags.neutral, "Relative probability of a neutral column");
    gen->add_option("--out", gen_flags.out_path, "Write the instance here instead of stdout");
    gen->callback([&] { action = [&](const Output& o) { return cmd_gen(o, gen_flags); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        const bool wants_json = std::find(args.begin(), args.end(), "--json") != args.end();
        report_error(err, wants_json, "UsageError", e.what(), kInputError);
        return kInputError;
    }

    try {
        return action(Output{out, json});
    } catch (const InternalInvariantViolation& e) {
        report_error(err, json, "InternalInvariantViolation", e.what(), kInternalError);
        return kInternalError;
    } catch (const ValidationFailed& e) {
        report_error(err, json, "ValidationFailed", e.what(), kInternalError);
        return kInternalError;
    } catch (const InputError& e) {
        report_error(err, json, "InputError", e.what(), kInputError);
        return kInputError;
    } catch (const std::exception& e) {
        report_error(err, json, "InternalError", e.what(), kInternalError);
        return kInternalError;
    }
}

}  // namespace manna::cli
