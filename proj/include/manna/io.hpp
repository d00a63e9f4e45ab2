#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "manna/core.hpp"
#include "manna/fairness.hpp"
#include "manna/market.hpp"
#include "manna/search.hpp"
#include "manna/sequences.hpp"

namespace manna::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "0.1.0";

/// Raw fields of an instance document. Throws InputError when the JSON
/// structure is wrong (missing keys, non-array fields). Non-string rational
/// entries are kept as their JSON text so validation reports them.
RawInstance raw_instance_from_json(const Json& doc);

/// Parses and validates; throws InputError listing every issue.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

/// Canonical text: fixed key order, one matrix row per line, trailing newline.
std::string serialize_instance(const Instance& inst);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string instance_hash(const Instance& inst);

/// {"bundles": [[...], ...]}; must partition the instance's items.
Allocation allocation_from_json(const Json& doc, const Instance& inst);
Json to_json(const Allocation& alloc);
Json bundles_json(const Bundles& bundles);

/// {"bundles": [...], "prices": ["p/q", ...]}
FisherMarket market_from_json(const Json& doc, const Instance& inst);
Json to_json(const FisherMarket& market);

Json to_json(const Rational& r);
Json to_json(const EnvyReport& report);
Json to_json(const BbbInterval& interval);
Json to_json(const EquilibriumCertificate& cert);
Json to_json(const EquilibriumCheck& check);
Json to_json(const SolveTrace& trace);
Json to_json(const PartAllocation& part);
Json to_json(const search::SearchReport& report, const search::OwnerSpace& space);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Version and instance hash header carried by every report.
Json report_header(const Instance& inst);

}  // namespace manna::io
