#include "manna/io.hpp"

#include <fstream>
#include <sstream>

#include "manna/error.hpp"

namespace manna::io {

namespace {

// Non-strings keep their JSON text plus a marker, so validation reports them
// as malformed instead of silently accepting a number.
std::string entry_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump() + " (not a JSON string)"; }

const Json& require_key(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing key \"") + key + "\"");
    return doc.at(key);
}

std::vector<std::string> string_array(const Json& v, const char* what) {
    if (!v.is_array()) throw InputError(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(entry_text(e));
    return out;
}

Rational parse_rational(const Json& v) {
    if (!v.is_string()) throw MalformedRational(v.dump());
    auto r = Rational::parse(v.get<std::string>());
    if (!r) throw MalformedRational(v.get<std::string>());
    return *r;
}

std::string quoted(const std::string& s) { return Json(s).dump(); }

std::string string_row(const std::vector<std::string>& row) {
    std::string out = "[";
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? ", " : "") + quoted(row[k]);
    return out + "]";
}

std::vector<std::string> rational_strings(std::span<const Rational> values) {
    std::vector<std::string> out;
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

Json rationals(std::span<const Rational> values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

Bundles bundles_from_json(const Json& doc, const Instance& inst) {
    const Json& arr = require_key(doc, "bundles");
    if (!arr.is_array() || arr.size() != inst.agents())
        throw InputError("\"bundles\" must hold one array per agent (" + std::to_string(inst.agents()) + ")");
    Bundles bundles;
    for (const auto& b : arr) {
        if (!b.is_array()) throw InputError("each bundle must be an array of item indices");
        std::vector<ItemId> items;
        for (const auto& j : b) {
            if (!j.is_number_unsigned()) throw InputError("bundle entries must be non-negative integers");
            items.push_back(j.get<ItemId>());
        }
        bundles.push_back(std::move(items));
    }
    return bundles;
}

}  // namespace

RawInstance raw_instance_from_json(const Json& doc) {
    RawInstance raw;
    raw.weights = string_array(require_key(doc, "weights"), "\"weights\"");
    if (doc.contains("items")) {
        const auto& items = doc.at("items");
        if (!items.is_array()) throw InputError("\"items\" must be an array");
        std::vector<std::string> labels;
        for (const auto& e : items) {
            if (!e.is_string()) throw InputError("item labels must be strings");
            labels.push_back(e.get<std::string>());
        }
        raw.items = std::move(labels);
    }
    const Json& rows = require_key(doc, "valuations");
    if (!rows.is_array()) throw InputError("\"valuations\" must be an array of rows");
    for (const auto& row : rows) raw.valuations.push_back(string_array(row, "valuation row"));
    return raw;
}

Instance parse_instance(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("instance is not valid JSON: ") + e.what());
    }
    auto result = validate_instance(raw_instance_from_json(doc));
    if (!result.ok()) {
        std::string msg = "invalid instance:";
        for (const auto& issue : result.issues) msg += "\n  " + to_string(issue.kind) + ": " + issue.detail;
        throw InputError(msg);
    }
    return std::move(*result.instance);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

std::string serialize_instance(const Instance& inst) {
    std::string out = "{\n  \"weights\": " + string_row(rational_strings(inst.weights())) + ",\n";
    if (inst.labels()) out += "  \"items\": " + string_row(*inst.labels()) + ",\n";
    out += "  \"valuations\": [";
    for (AgentId i = 0; i < inst.agents(); ++i)
        out += std::string(i ? "," : "") + "\n    " + string_row(rational_strings(inst.row(i)));
    out += "\n  ]\n}\n";
    return out;
}

std::string instance_hash(const Instance& inst) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : serialize_instance(inst)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Allocation allocation_from_json(const Json& doc, const Instance& inst) {
    return Allocation::from_bundles(inst.items(), bundles_from_json(doc, inst));
}

Json bundles_json(const Bundles& bundles) {
    Json out = Json::array();
    for (const auto& b : bundles) out.push_back(b);
    return out;
}

Json to_json(const Allocation& alloc) { return Json{{"bundles", bundles_json(alloc.bundles())}}; }

FisherMarket market_from_json(const Json& doc, const Instance& inst) {
    Allocation alloc = allocation_from_json(doc, inst);
    const Json& p = require_key(doc, "prices");
    if (!p.is_array() || p.size() != inst.items())
        throw InputError("\"prices\" must hold one rational per item (" + std::to_string(inst.items()) + ")");
    std::vector<Rational> prices;
    for (const auto& v : p) prices.push_back(parse_rational(v));
    return FisherMarket(std::move(alloc), std::move(prices));
}

Json to_json(const FisherMarket& market) {
    Json out;
    if (market.integral()) {
        out["bundles"] = bundles_json(market.allocation().bundles());
    } else {
        Json shares = Json::array();
        for (const auto& row : market.shares()) shares.push_back(rationals(row));
        out["shares"] = shares;
    }
    out["prices"] = rationals(market.prices());
    return out;
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const EnvyReport& report) {
    Json pairs = Json::array();
    for (AgentId i = 0; i < report.pairs.size(); ++i) {
        for (AgentId j = 0; j < report.pairs[i].size(); ++j) {
            if (i == j) continue;
            const auto& v = report.pairs[i][j];
            Json cell{{"envier", i}, {"envied", j}, {"envies", v.envies}};
            if (v.witness)
                cell["witness"] = Json{{"item", v.witness->item}, {"move", to_string(v.witness->move)}};
            pairs.push_back(cell);
        }
    }
    return Json{{"notion", to_string(report.notion)}, {"overall", report.overall}, {"pairs", pairs}};
}

Json to_json(const BbbInterval& interval) {
    Json out{{"lo", interval.lo.str()}, {"lo_open", interval.lo_open}};
    out["hi"] = interval.hi ? Json(interval.hi->str()) : Json(nullptr);
    return out;
}

Json to_json(const EquilibriumCertificate& cert) {
    Json agents = Json::array();
    for (const auto& a : cert.agents) {
        Json entry{{"interval", to_json(a.interval)}};
        entry["alpha"] = a.alpha ? Json(a.alpha->str()) : Json(nullptr);
        agents.push_back(entry);
    }
    return Json{{"agents", agents}, {"price_signs", cert.price_signs}};
}

Json to_json(const EquilibriumCheck& check) {
    Json out{{"valid", check.valid()}};
    if (check.certificate) out["certificate"] = to_json(*check.certificate);
    Json violations = Json::array();
    for (const auto& v : check.violations) {
        Json e{{"kind", to_string(v.kind)}, {"detail", v.detail}};
        if (v.agent) e["agent"] = *v.agent;
        if (v.item) e["item"] = *v.item;
        violations.push_back(e);
    }
    out["violations"] = violations;
    return out;
}

Json to_json(const SolveTrace& trace) {
    Json iterations = Json::array();
    for (const auto& it : trace.iterations) {
        Json rec{{"least", it.least}, {"other", it.other}, {"weighted_budgets", rationals(it.weighted_budgets)},
                 {"progress", it.progress}};
        if (it.rescale) {
            const auto& r = *it.rescale;
            rec["rescale"] = Json{{"beta", r.beta ? Json(r.beta->str()) : Json("-inf")},
                                  {"gamma", r.gamma ? Json(r.gamma->str()) : Json("-inf")},
                                  {"rho", r.rho.str()},
                                  {"items", r.rescaled}};
        } else {
            rec["rescale"] = nullptr;
        }
        rec["transfer"] = Json{{"item", it.transfer.item},
                               {"from", it.transfer.from},
                               {"to", it.transfer.to},
                               {"kind", it.transfer.good ? "good" : "chore"}};
        rec["prices"] = rationals(it.prices);
        rec["bundles"] = bundles_json(it.bundles);
        rec["certificate"] = to_json(it.certificate);
        iterations.push_back(rec);
    }
    return Json{{"start", to_json(trace.start)}, {"iterations", iterations}};
}

Json to_json(const PartAllocation& part) {
    Json turns = Json::array();
    for (const auto& t : part.turns) turns.push_back(Json{{"agent", t.agent}, {"item", t.item ? Json(*t.item) : Json(nullptr)}});
    Json leftovers = Json::array();
    for (const auto& [item, agent] : part.leftovers) leftovers.push_back(Json{{"item", item}, {"agent", agent}});
    return Json{{"bundles", bundles_json(part.bundles)},
                {"turns", turns},
                {"leftovers", leftovers},
                {"repaired", part.repaired},
                {"wef1", to_json(part.check)}};
}

Json to_json(const search::SearchReport& report, const search::OwnerSpace& space) {
    Json satisfying = Json::array();
    for (auto k : report.satisfying) satisfying.push_back(Json{{"index", k}, {"owners", space.owners(k)}});
    Json violations = Json::array();
    for (const auto& v : report.violations)
        violations.push_back(Json{{"index", v.index},
                                  {"owners", space.owners(v.index)},
                                  {"instance", v.instance},
                                  {"envier", v.envier},
                                  {"envied", v.envied}});
    return Json{{"total", report.total},
                {"satisfying_count", report.satisfying_count},
                {"satisfying", satisfying},
                {"violations", violations}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + " is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

Json report_header(const Instance& inst) {
    return Json{{"version", std::string(kVersion)}, {"instance_hash", instance_hash(inst)}};
}

}  // namespace manna::io
