#pragma once

// JSON renderings of every report type. Rationals are "p/q" strings and
// families are lists of hex masks, so reports compare byte-for-byte.

#include "achain/constructions.hpp"
#include "achain/extremal_search.hpp"
#include "achain/family_io.hpp"
#include "achain/hypercube.hpp"
#include "achain/lemma_lab.hpp"
#include "achain/littlewood_offord.hpp"

#include <json.hpp>

#include <charconv>
#include <sstream>
#include <string>

namespace achain {

inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::ordered_json;

inline std::string hex_mask(std::uint64_t m) {
    char buf[17];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, m, 16);
    return std::string(buf, end);
}

inline Json to_json(const Subset& s) { return hex_mask(s.bits()); }

inline Json to_json(const SetFamily& f) {
    Json members = Json::array();
    for (auto m : f.masks()) members.push_back(hex_mask(m));
    return Json{{"n", f.ground()}, {"size", f.size()}, {"members", members}};
}

inline Json pair_json(const std::optional<std::pair<Subset, Subset>>& p) {
    if (!p) return nullptr;
    return Json::array({to_json(p->first), to_json(p->second)});
}

/// Minimum distance rendered as an integer, or "inf" for fewer than two members.
inline Json distance_json(int distance, int n) {
    if (distance > n) return "inf";
    return distance;
}

inline Json to_json(const AntichainReport& r) {
    return Json{{"antichain", r.antichain}, {"witness", pair_json(r.witness)}};
}

inline Json to_json(const DistanceReport& r, int n) {
    return Json{{"min_distance", distance_json(r.min_distance, n)}, {"witness", pair_json(r.witness)}};
}

inline Json to_json(const LocalLymReport& r) {
    return Json{{"lhs", to_string(r.lhs)}, {"rhs", to_string(r.rhs)}, {"holds", r.holds}};
}

inline Json to_json(const ConstructionResult& c) {
    Json params = Json::object();
    for (const auto& [k, v] : c.parameters) params[k] = v;
    Json j{{"construction", c.name}, {"parameters", params}, {"size", c.family.size()}};
    if (c.translate_witness) {
        j["translate"] = to_json(*c.translate_witness);
        j["exact"] = c.exact;
        j["source_size"] = c.source_size;
        j["averaging_bound"] = averaging_bound(c.source_size, c.family.ground()).str();
    }
    return j;
}

inline Json to_json(const SearchResult& r) {
    return Json{{"n", r.n},
                {"d", r.d},
                {"best_size", r.best_size},
                {"certified", r.certified},
                {"nodes_explored", r.nodes_explored},
                {"node_budget", r.node_budget},
                {"witness", to_json(r.witness)}};
}

inline Json to_json(const RatioRow& row) {
    return Json{{"n", row.n},           {"size", row.size},          {"certified", row.certified},
                {"source", row.source}, {"scaled", to_string(row.scaled)}, {"ratio", row.ratio}};
}

inline Json to_json(const RhoReport& r) {
    return Json{{"n", r.n},
                {"rho", to_string(r.rho)},
                {"witness_alpha", to_string(r.witness_alpha)},
                {"level_count", r.level_count},
                {"method", to_string(r.method)}};
}

inline Json to_json(const HalaszReport& r) {
    Json j{{"r", r.r}, {"holds", r.holds}, {"violation", nullptr}};
    if (r.violation)
        j["violation"] = Json{{"x", r.violation->first.elements()}, {"y", r.violation->second.elements()}};
    return j;
}

inline Json to_json(const ReductionReport& r, int n) {
    return Json{{"r", r.r},
                {"alpha", to_string(r.alpha)},
                {"family_size", r.family_size},
                {"antichain", r.antichain},
                {"distance_ok", r.distance_ok},
                {"min_distance", distance_json(r.min_distance, n)},
                {"antichain_witness", pair_json(r.antichain_witness)},
                {"distance_witness", pair_json(r.distance_witness)}};
}

inline Json to_json(const LemmaReport& r) {
    return Json{{"lhs", r.lhs}, {"rhs", to_string(r.rhs)}, {"slack", to_string(r.slack)}, {"holds", r.holds}};
}

inline Json to_json(const ChainReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"k", row.k},
                            {"S_k", row.s_k},
                            {"S_k+3r", row.s_k_plus_3r},
                            {"A_k+2r", row.a_k_plus_2r},
                            {"rhs", to_string(row.rhs)},
                            {"holds", row.holds}});
    Json aggs = Json::array();
    for (const auto& a : r.aggregates)
        aggs.push_back(Json{{"k", a.k}, {"S_k", a.s_k}, {"levels", a.levels}, {"bound", to_string(a.bound)},
                            {"holds", a.holds}});
    return Json{{"n", r.n},
                {"r", r.r},
                {"S_sizes", r.s_sizes},
                {"rows", rows},
                {"aggregates", aggs},
                {"window_empty", r.window_empty},
                {"note", r.note},
                {"holds", r.holds}};
}

/// Report header carried by every CLI output.
inline Json report_header(const std::string& command, const Json& params, std::optional<std::uint64_t> seed = {}) {
    Json h{{"tool", "achain"}, {"version", kVersion}, {"command", command}, {"parameters", params}};
    h["seed"] = seed ? Json(*seed) : Json(nullptr);
    return h;
}

}  // namespace achain
