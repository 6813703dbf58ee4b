#pragma once

#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gridpath/bench.hpp"
#include "gridpath/cost.hpp"
#include "gridpath/dataset.hpp"
#include "gridpath/error.hpp"
#include "gridpath/grid.hpp"
#include "gridpath/search.hpp"

namespace gridpath {

using json = nlohmann::ordered_json;

inline json cost_json(const ExactCost& c) {
    return {{"cardinals", c.cardinals}, {"diagonals", c.diagonals}, {"value", c.to_float()}};
}

inline json cell_json(const Cell& c) { return json::array({c.row, c.col}); }

inline Cell cell_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw FormatError("cell must be a [row, col] pair");
    return {j.at(0).get<int>(), j.at(1).get<int>()};
}

inline ExactCost cost_from_json(const json& j) {
    return {j.at("cardinals").get<std::uint32_t>(), j.at("diagonals").get<std::uint32_t>()};
}

inline json search_result_json(const SearchResult& r) {
    json path = json::array();
    for (const auto& c : r.path) path.push_back(cell_json(c));
    return {
        {"status", to_string(r.status)},
        {"path", std::move(path)},
        {"cost", r.cost ? cost_json(*r.cost) : json(nullptr)},
        {"expansions", r.expansions},
        {"generated", r.generated},
        {"reexpansions", r.reexpansions},
        {"f_min_final", r.f_min_final},
    };
}

/// One line of an instance file. `map` is the path of the map file.
inline json instance_json(const InstanceRecord& r, const std::string& map_path) {
    return {
        {"id", r.id},
        {"map", map_path},
        {"map_id", r.map_id},
        {"base_map_id", r.base_map_id},
        {"start", cell_json(r.start)},
        {"goal", cell_json(r.goal)},
        {"optimal_cost", cost_json(r.optimal_cost)},
        {"hardness", r.hardness},
        {"split", to_string(r.split)},
    };
}

struct InstanceLine {
    InstanceRecord record;
    std::string map_path;
};

inline InstanceLine instance_from_json(const json& j) {
    InstanceLine line;
    auto& r = line.record;
    r.id = j.at("id").get<std::string>();
    line.map_path = j.at("map").get<std::string>();
    r.map_id = j.value("map_id", std::string{});
    r.base_map_id = j.value("base_map_id", r.map_id);
    r.start = cell_from_json(j.at("start"));
    r.goal = cell_from_json(j.at("goal"));
    r.optimal_cost = cost_from_json(j.at("optimal_cost"));
    r.hardness = j.at("hardness").get<double>();
    const auto split = parse_split(j.value("split", std::string{"train"}));
    if (!split) throw FormatError("unknown split in instance " + r.id);
    r.split = *split;
    return line;
}

/// Read a JSON-lines instance file.
inline std::vector<InstanceLine> read_instances(std::istream& in) {
    std::vector<InstanceLine> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(instance_from_json(json::parse(text)));
        } catch (const json::exception& e) {
            throw ParseError(line, e.what());
        }
    }
    return out;
}

namespace detail {

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json five_number_json(const FiveNumber& f) {
    return {{"min", f.min}, {"q1", f.q1}, {"median", f.median}, {"q3", f.q3}, {"max", f.max}};
}

}  // namespace detail

inline json buckets_json(const std::vector<BucketSummary>& buckets) {
    json rows = json::array();
    for (const auto& b : buckets) {
        rows.push_back({
            {"planner", b.planner_id},
            {"hardness_min", b.lower},
            {"hardness_max", detail::finite_or_null(b.upper)},
            {"count", b.count},
            {"cost_ratio", detail::five_number_json(b.cost_ratio)},
            {"expansions_ratio", detail::five_number_json(b.expansions_ratio)},
        });
    }
    return {
        {"quantile_method", "linear interpolation between order statistics"},
        {"buckets", std::move(rows)},
    };
}

inline json report_json(const AggregateReport& report) {
    json planners = json::array();
    for (const auto& p : report.planners) {
        planners.push_back({
            {"planner", p.planner_id},
            {"runs", p.runs},
            {"failures", p.failures},
            {"optimal_found_ratio", p.optimal_found_ratio},
            {"cost_ratio", {{"mean", p.cost_ratio.mean}, {"std", p.cost_ratio.std}}},
            {"expansions_ratio", {{"mean", p.expansions_ratio.mean}, {"std", p.expansions_ratio.std}}},
        });
    }
    return {
        {"reference", "astar"},
        {"std_kind", "population"},
        {"planners", std::move(planners)},
        {"hardness_buckets", buckets_json(report.buckets)},
    };
}

}  // namespace gridpath
