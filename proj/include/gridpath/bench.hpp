#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gridpath/cost.hpp"
#include "gridpath/dataset.hpp"
#include "gridpath/error.hpp"
#include "gridpath/grid.hpp"
#include "gridpath/heuristics.hpp"
#include "gridpath/oracle.hpp"
#include "gridpath/search.hpp"

namespace gridpath {

/// Where a planner's heuristic map comes from.
enum class MapSource : std::uint8_t { File, Oracle, Zero, Random };

inline std::string_view to_string(MapSource s) {
    switch (s) {
        case MapSource::File: return "file";
        case MapSource::Oracle: return "oracle";
        case MapSource::Zero: return "zero";
        case MapSource::Random: return "random";
    }
    return "?";
}

inline std::optional<MapSource> parse_map_source(std::string_view s) {
    if (s == "file") return MapSource::File;
    if (s == "oracle") return MapSource::Oracle;
    if (s == "zero") return MapSource::Zero;
    if (s == "random") return MapSource::Random;
    return std::nullopt;
}

inline constexpr double kDefaultWeight = 2.0;

struct PlannerSpec {
    std::string id;
    Algorithm algorithm = Algorithm::AStar;
    double weight = 1.0;
    MapSource source = MapSource::File;
    TieBreak tie_break = TieBreak::HighG;
};

namespace detail {

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace detail

/// Parse one planner term `name[:w][:source]`, e.g. `wastar:2`,
/// `focal:1.5:oracle`, `wastar-cf:oracle`. w defaults to 2 for WA* and focal
/// search and is ignored elsewhere; source defaults to `file`.
inline PlannerSpec parse_planner(std::string_view term) {
    const auto parts = detail::split_on(term, ':');
    PlannerSpec spec;
    spec.id = std::string(term);
    const auto algo = parse_algorithm(parts[0]);
    if (!algo) throw ContractViolation("unknown planner '" + std::string(parts[0]) + "'");
    spec.algorithm = *algo;
    const bool weighted = *algo == Algorithm::WAStar || *algo == Algorithm::Focal;
    spec.weight = weighted ? kDefaultWeight : 1.0;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (auto w = detail::parse_double(parts[i])) {
            if (!(*w >= 1.0)) throw ContractViolation("planner weight must be >= 1 in '" + std::string(term) + "'");
            if (weighted) spec.weight = *w;
        } else if (auto src = parse_map_source(parts[i])) {
            spec.source = *src;
        } else {
            throw ContractViolation("bad planner field '" + std::string(parts[i]) + "' in '" + std::string(term) + "'");
        }
    }
    return spec;
}

inline std::vector<PlannerSpec> parse_planners(std::string_view list) {
    std::vector<PlannerSpec> out;
    for (auto term : detail::split_on(list, ',')) {
        if (term.empty()) continue;
        out.push_back(parse_planner(term));
    }
    if (out.empty()) throw ContractViolation("no planners given");
    return out;
}

/// A record together with the grid it was sampled on.
struct BenchInstance {
    InstanceRecord record;
    std::shared_ptr<const GridMap> grid;
};

/// Supplies the heuristic map a planner needs for an instance. Must be safe
/// to call concurrently.
using MapProvider = std::function<std::shared_ptr<const HeuristicMap>(const BenchInstance&, HeuristicKind, MapSource)>;

/// Oracle, zero and random maps computed in-process; File is rejected.
inline std::shared_ptr<const HeuristicMap> builtin_map(const BenchInstance& inst, HeuristicKind kind, MapSource source,
                                                       MovePolicy policy = {}) {
    const GridMap& grid = *inst.grid;
    switch (source) {
        case MapSource::Oracle: {
            const PTask task{grid, inst.record.start, inst.record.goal};
            switch (kind) {
                case HeuristicKind::CF: return std::make_shared<HeuristicMap>(cf_map(grid, task.goal, policy));
                case HeuristicKind::PP: return std::make_shared<HeuristicMap>(oracle_ppm(task, policy));
                case HeuristicKind::ABS: return std::make_shared<HeuristicMap>(hstar_map(grid, task.goal, policy));
            }
            break;
        }
        case MapSource::Zero:
            return std::make_shared<HeuristicMap>(HeuristicMap::filled(kind, grid.height(), grid.width(), 0.0f));
        case MapSource::Random: {
            std::mt19937_64 rng(detail::fnv1a(inst.record.id));
            std::uniform_real_distribution<float> u(0.0f, 1.0f);
            std::vector<float> values(grid.size());
            for (auto& v : values) v = u(rng);
            return std::make_shared<HeuristicMap>(kind, grid.height(), grid.width(), std::move(values));
        }
        case MapSource::File: break;
    }
    throw ContractViolation("builtin map provider cannot load file maps");
}

struct RunMetrics {
    std::string instance_id;
    std::string planner_id;
    bool solved = false;
    double cost_ratio = 0.0;        // percent of the optimal cost
    double expansions_ratio = 0.0;  // percent of reference A* expansions
    bool optimal = false;
    double hardness = 1.0;
    std::size_t expansions = 0;
    std::optional<ExactCost> cost;
};

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // population
};

struct PlannerSummary {
    std::string planner_id;
    std::size_t runs = 0;
    std::size_t failures = 0;
    double optimal_found_ratio = 0.0;  // percent of all runs
    MeanStd cost_ratio;
    MeanStd expansions_ratio;
};

struct FiveNumber {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct BucketSummary {
    std::string planner_id;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    FiveNumber cost_ratio;
    FiveNumber expansions_ratio;
};

struct AggregateReport {
    std::vector<PlannerSummary> planners;
    std::vector<BucketSummary> buckets;
};

/// Quantile with linear interpolation between order statistics
/// (position p * (n - 1) in the sorted sample).
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

inline FiveNumber five_number(std::vector<double> values) {
    if (values.empty()) return {};
    std::sort(values.begin(), values.end());
    return {values.front(), quantile_sorted(values, 0.25), quantile_sorted(values, 0.5),
            quantile_sorted(values, 0.75), values.back()};
}

inline MeanStd mean_std(const std::vector<double>& values) {
    if (values.empty()) return {};
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

namespace detail {

// Stable order for reductions: planner order as first seen, then instance id.
inline std::vector<RunMetrics> canonical_order(std::vector<RunMetrics> metrics) {
    std::map<std::string, std::size_t> rank;
    for (const auto& m : metrics) rank.emplace(m.planner_id, rank.size());
    std::stable_sort(metrics.begin(), metrics.end(), [&](const RunMetrics& a, const RunMetrics& b) {
        if (a.planner_id != b.planner_id) return rank.at(a.planner_id) < rank.at(b.planner_id);
        return a.instance_id < b.instance_id;
    });
    return metrics;
}

inline std::vector<std::string> planner_order(const std::vector<RunMetrics>& metrics) {
    std::vector<std::string> ids;
    for (const auto& m : metrics)
        if (std::find(ids.begin(), ids.end(), m.planner_id) == ids.end()) ids.push_back(m.planner_id);
    return ids;
}

}  // namespace detail

inline const std::vector<double> kDefaultBucketEdges{1.05, 1.25, 1.5, 2.0};

/// Five-number summaries per (planner, hardness bucket). `edges` are the
/// lower bounds; the last bucket is open-ended. Empty buckets appear with
/// count 0. Failed runs are left out.
inline std::vector<BucketSummary> bucket_by_hardness(const std::vector<RunMetrics>& metrics,
                                                     const std::vector<double>& edges = kDefaultBucketEdges) {
    if (metrics.empty()) throw ContractViolation("bucket_by_hardness needs at least one metric row");
    if (edges.empty() || !std::is_sorted(edges.begin(), edges.end())) {
        throw ContractViolation("bucket edges must be non-empty and ascending");
    }
    const auto ordered = detail::canonical_order(metrics);
    std::vector<BucketSummary> out;
    for (const auto& planner : detail::planner_order(ordered)) {
        for (std::size_t b = 0; b < edges.size(); ++b) {
            BucketSummary s;
            s.planner_id = planner;
            s.lower = edges[b];
            s.upper = b + 1 < edges.size() ? edges[b + 1] : std::numeric_limits<double>::infinity();
            std::vector<double> cost, exp;
            for (const auto& m : ordered) {
                if (m.planner_id != planner || !m.solved) continue;
                if (m.hardness >= s.lower && m.hardness < s.upper) {
                    cost.push_back(m.cost_ratio);
                    exp.push_back(m.expansions_ratio);
                }
            }
            s.count = cost.size();
            s.cost_ratio = five_number(cost);
            s.expansions_ratio = five_number(exp);
            out.push_back(std::move(s));
        }
    }
    return out;
}

inline std::vector<PlannerSummary> summarize(const std::vector<RunMetrics>& metrics) {
    const auto ordered = detail::canonical_order(metrics);
    std::vector<PlannerSummary> out;
    for (const auto& planner : detail::planner_order(ordered)) {
        PlannerSummary s;
        s.planner_id = planner;
        std::vector<double> cost, exp;
        std::size_t optimal = 0;
        for (const auto& m : ordered) {
            if (m.planner_id != planner) continue;
            ++s.runs;
            if (!m.solved) {
                ++s.failures;
                continue;
            }
            optimal += m.optimal ? 1 : 0;
            cost.push_back(m.cost_ratio);
            exp.push_back(m.expansions_ratio);
        }
        s.optimal_found_ratio = s.runs ? 100.0 * static_cast<double>(optimal) / static_cast<double>(s.runs) : 0.0;
        s.cost_ratio = mean_std(cost);
        s.expansions_ratio = mean_std(exp);
        out.push_back(std::move(s));
    }
    return out;
}

struct EvaluateOptions {
    MovePolicy policy{};
    unsigned jobs = 1;
    std::vector<double> bucket_edges = kDefaultBucketEdges;
};

struct Evaluation {
    std::vector<RunMetrics> metrics;  // instance-major, planners in given order
    AggregateReport report;
};

/// Run every planner on every instance against an A* reference. Throws
/// ContractViolation if the reference fails or disagrees with the stored
/// optimal cost.
inline Evaluation evaluate(const std::vector<BenchInstance>& instances, const std::vector<PlannerSpec>& planners,
                           const MapProvider& provider, const EvaluateOptions& options = {}) {
    std::vector<std::vector<RunMetrics>> rows(instances.size());
    std::vector<std::string> errors(instances.size());

    auto run_one = [&](std::size_t i) {
        const BenchInstance& inst = instances[i];
        const PTask task{*inst.grid, inst.record.start, inst.record.goal};
        SearchConfig ref = SearchConfig::astar();
        ref.policy = options.policy;
        const SearchResult reference = solve(task, ref);
        if (!reference.found()) throw ContractViolation("reference A* failed on " + inst.record.id);
        if (*reference.cost != inst.record.optimal_cost) {
            throw ContractViolation("reference A* cost disagrees with stored optimum on " + inst.record.id);
        }
        const double optimal = inst.record.optimal_cost.to_float();
        for (const auto& p : planners) {
            SearchConfig cfg;
            cfg.algorithm = p.algorithm;
            cfg.weight = p.weight;
            cfg.tie_break = p.tie_break;
            cfg.policy = options.policy;
            if (auto kind = required_map_kind(p.algorithm)) cfg.heuristic_map = provider(inst, *kind, p.source);
            const SearchResult r = solve(task, cfg);
            RunMetrics m;
            m.instance_id = inst.record.id;
            m.planner_id = p.id;
            m.hardness = inst.record.hardness;
            m.expansions = r.expansions;
            m.solved = r.found();
            if (m.solved) {
                m.cost = r.cost;
                m.optimal = *r.cost == inst.record.optimal_cost;
                // Exact equality means exactly 100, not 100 * c / c in floats.
                m.cost_ratio = m.optimal || optimal == 0.0 ? 100.0 : 100.0 * r.cost->to_float() / optimal;
                m.expansions_ratio =
                    100.0 * static_cast<double>(r.expansions) / static_cast<double>(reference.expansions);
            }
            rows[i].push_back(std::move(m));
        }
    };

    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(instances.size())));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < instances.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < jobs; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < instances.size(); i = next++) {
                    try {
                        run_one(i);
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                    }
                }
            });
        }
        workers.clear();
        for (const auto& e : errors)
            if (!e.empty()) throw ContractViolation(e);
    }

    Evaluation out;
    for (auto& r : rows)
        for (auto& m : r) out.metrics.push_back(std::move(m));
    out.report.planners = summarize(out.metrics);
    if (!out.metrics.empty()) out.report.buckets = bucket_by_hardness(out.metrics, options.bucket_edges);
    return out;
}

inline void write_results_csv(std::ostream& out, const std::vector<RunMetrics>& metrics) {
    out << "instance_id,planner_id,solved,cost_ratio,expansions_ratio,optimal,hardness,expansions,cost_cardinals,"
           "cost_diagonals,cost\n";
    out.precision(17);
    for (const auto& m : metrics) {
        out << m.instance_id << ',' << m.planner_id << ',' << (m.solved ? 1 : 0) << ',' << m.cost_ratio << ','
            << m.expansions_ratio << ',' << (m.optimal ? 1 : 0) << ',' << m.hardness << ',' << m.expansions << ',';
        if (m.cost) out << m.cost->cardinals << ',' << m.cost->diagonals << ',' << m.cost->to_float();
        else out << ",,";
        out << '\n';
    }
}

/// Parse a results.csv written by write_results_csv.
inline std::vector<RunMetrics> read_results_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError(0, "empty results file");
    ++lineno;
    std::vector<RunMetrics> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = detail::split_on(line, ',');
        if (f.size() != 11) throw ParseError(lineno, "expected 11 fields");
        auto num = [&](std::string_view s) {
            auto v = detail::parse_double(s);
            if (!v) throw ParseError(lineno, "bad number '" + std::string(s) + "'");
            return *v;
        };
        RunMetrics m;
        m.instance_id = std::string(f[0]);
        m.planner_id = std::string(f[1]);
        m.solved = f[2] == "1";
        m.cost_ratio = num(f[3]);
        m.expansions_ratio = num(f[4]);
        m.optimal = f[5] == "1";
        m.hardness = num(f[6]);
        m.expansions = static_cast<std::size_t>(num(f[7]));
        if (!f[8].empty()) {
            m.cost = ExactCost{static_cast<std::uint32_t>(num(f[8])), static_cast<std::uint32_t>(num(f[9]))};
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace gridpath
