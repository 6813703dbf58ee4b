#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "gridpath/bench.hpp"
#include "gridpath/json_io.hpp"
#include "oracles.hpp"

using namespace gridpath;

namespace {

// "Type 7" sample quantile written 1-based, as textbooks state it.
long double reference_quantile(std::vector<double> xs, double p) {
    std::sort(xs.begin(), xs.end());
    const long double h = (static_cast<long double>(xs.size()) - 1) * p + 1;
    const auto fl = static_cast<std::size_t>(h);
    if (fl >= xs.size()) return xs.back();
    return xs[fl - 1] + (h - fl) * (static_cast<long double>(xs[fl]) - xs[fl - 1]);
}

std::vector<BenchInstance> make_instances(int count, std::uint64_t seed, int size = 32) {
    std::vector<BenchInstance> out;
    MapGenConfig cfg;
    cfg.tile_size = size / 2;
    cfg.density = 0.25;
    for (std::uint64_t s = seed; static_cast<int>(out.size()) < count; ++s) {
        cfg.seed = s;
        cfg.obstacle_style = static_cast<ObstacleStyle>(s % 3);
        auto grid = std::make_shared<const GridMap>(generate_map(cfg));
        auto rec = sample_instance(*grid, s);
        if (!rec) continue;
        rec->id = "inst_" + std::to_string(s);
        rec->map_id = rec->base_map_id = "map_" + std::to_string(s);
        out.push_back({*rec, grid});
    }
    return out;
}

MapProvider builtin() {
    return [](const BenchInstance& i, HeuristicKind k, MapSource s) { return builtin_map(i, k, s); };
}

RunMetrics row(std::string inst, std::string planner, double cost, double exp, double hardness, bool solved = true) {
    RunMetrics m;
    m.instance_id = std::move(inst);
    m.planner_id = std::move(planner);
    m.cost_ratio = cost;
    m.expansions_ratio = exp;
    m.hardness = hardness;
    m.solved = solved;
    m.optimal = solved && cost == 100.0;
    return m;
}

}  // namespace

TEST(Stats, QuantilesMatchReference) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 500);
    for (int n = 1; n < 60; ++n) {
        std::vector<double> xs(n);
        for (auto& x : xs) x = u(rng);
        const auto f = five_number(xs);
        EXPECT_NEAR(f.q1, static_cast<double>(reference_quantile(xs, 0.25)), 1e-9);
        EXPECT_NEAR(f.median, static_cast<double>(reference_quantile(xs, 0.5)), 1e-9);
        EXPECT_NEAR(f.q3, static_cast<double>(reference_quantile(xs, 0.75)), 1e-9);
        EXPECT_EQ(f.min, *std::min_element(xs.begin(), xs.end()));
        EXPECT_EQ(f.max, *std::max_element(xs.begin(), xs.end()));
    }
}

TEST(Stats, ConstantSeriesAndSmallCases) {
    const auto f = five_number({7.5, 7.5, 7.5, 7.5});
    EXPECT_EQ(f.median, 7.5);
    EXPECT_EQ(f.q1, 7.5);
    const auto g = five_number({1, 2, 3, 4});
    EXPECT_DOUBLE_EQ(g.median, 2.5);
    EXPECT_DOUBLE_EQ(g.q1, 1.75);
    EXPECT_DOUBLE_EQ(g.q3, 3.25);
    const auto ms = mean_std({2, 4, 4, 4, 5, 5, 7, 9});
    EXPECT_DOUBLE_EQ(ms.mean, 5.0);
    EXPECT_DOUBLE_EQ(ms.std, 2.0);  // population
}

TEST(Planners, Parse) {
    const auto ps = parse_planners("astar,wastar:2,focal:1.5:oracle,wastar-cf:oracle,gbfs-ppm:random,focal");
    ASSERT_EQ(ps.size(), 6u);
    EXPECT_EQ(ps[0].algorithm, Algorithm::AStar);
    EXPECT_EQ(ps[1].weight, 2.0);
    EXPECT_EQ(ps[2].weight, 1.5);
    EXPECT_EQ(ps[2].source, MapSource::Oracle);
    EXPECT_EQ(ps[3].source, MapSource::Oracle);
    EXPECT_EQ(ps[3].weight, 1.0);
    EXPECT_EQ(ps[4].source, MapSource::Random);
    EXPECT_EQ(ps[5].weight, kDefaultWeight);
    EXPECT_EQ(ps[5].source, MapSource::File);
    EXPECT_EQ(ps[2].id, "focal:1.5:oracle");
    EXPECT_THROW(parse_planners("dijkstra"), ContractViolation);
    EXPECT_THROW(parse_planners("wastar:0.5"), ContractViolation);
    EXPECT_THROW(parse_planners("focal:2:bogus"), ContractViolation);
    EXPECT_THROW(parse_planners(""), ContractViolation);
}

TEST(Buckets, SinglePopulatedBucket) {
    std::vector<RunMetrics> ms;
    for (int i = 0; i < 5; ++i) ms.push_back(row("i" + std::to_string(i), "p", 100 + i, 50, 1.1));
    const auto b = bucket_by_hardness(ms);
    ASSERT_EQ(b.size(), 4u);
    EXPECT_EQ(b[0].count, 5u);
    EXPECT_EQ(b[1].count, 0u);
    EXPECT_EQ(b[2].count, 0u);
    EXPECT_EQ(b[3].count, 0u);
    EXPECT_EQ(b[0].cost_ratio.median, 102.0);
    EXPECT_TRUE(std::isinf(b[3].upper));
    EXPECT_THROW(bucket_by_hardness({}), ContractViolation);
}

TEST(Buckets, EdgesAndFailures) {
    const std::vector<RunMetrics> ms{row("a", "p", 100, 10, 1.05), row("b", "p", 110, 20, 1.25), row("c", "p", 120, 30, 1.5),
                                     row("d", "p", 130, 40, 2.0), row("e", "p", 140, 50, 9.0),
                                     row("f", "p", 0, 0, 1.1, false), row("g", "p", 100, 10, 1.0)};
    const auto b = bucket_by_hardness(ms);
    ASSERT_EQ(b.size(), 4u);
    EXPECT_EQ(b[0].count, 1u);  // 1.05; 1.0 is below the first edge, the failure is excluded
    EXPECT_EQ(b[1].count, 1u);
    EXPECT_EQ(b[2].count, 1u);
    EXPECT_EQ(b[3].count, 2u);
}

TEST(Summary, FailuresExcludedFromMeans) {
    const std::vector<RunMetrics> ms{row("a", "p", 100, 50, 1.2), row("b", "p", 120, 70, 1.2), row("c", "p", 0, 0, 1.2, false)};
    const auto s = summarize(ms);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].runs, 3u);
    EXPECT_EQ(s[0].failures, 1u);
    EXPECT_DOUBLE_EQ(s[0].cost_ratio.mean, 110.0);
    EXPECT_DOUBLE_EQ(s[0].cost_ratio.std, 10.0);
    EXPECT_NEAR(s[0].optimal_found_ratio, 100.0 / 3.0, 1e-12);
}

TEST(Evaluate, ReferenceIdentityAndWeightedBound) {
    const auto insts = make_instances(40, 100);
    const auto ev = evaluate(insts, parse_planners("astar,wastar:2,focal:2:oracle,wastar-cf:oracle"), builtin());
    ASSERT_EQ(ev.metrics.size(), 160u);
    const auto& a = ev.report.planners[0];
    EXPECT_EQ(a.planner_id, "astar");
    EXPECT_EQ(a.optimal_found_ratio, 100.0);
    EXPECT_EQ(a.cost_ratio.mean, 100.0);
    EXPECT_EQ(a.cost_ratio.std, 0.0);
    EXPECT_EQ(a.expansions_ratio.mean, 100.0);
    EXPECT_EQ(a.expansions_ratio.std, 0.0);
    for (const auto& m : ev.metrics) {
        ASSERT_TRUE(m.solved);
        EXPECT_GE(m.cost_ratio, 100.0 - 1e-6);
        if (m.planner_id == "astar") {
            EXPECT_EQ(m.expansions_ratio, 100.0);
        }
    }
    EXPECT_LE(ev.report.planners[1].cost_ratio.mean, 200.0);
    EXPECT_EQ(ev.report.planners[3].optimal_found_ratio, 100.0);
}

TEST(Evaluate, OptimalFlagUsesExactEquality) {
    const auto insts = make_instances(20, 7);
    const auto ev = evaluate(insts, parse_planners("wastar:4"), builtin());
    for (std::size_t i = 0; i < insts.size(); ++i) {
        const auto& m = ev.metrics[i];
        EXPECT_EQ(m.optimal, *m.cost == insts[i].record.optimal_cost);
        EXPECT_EQ(m.optimal, oracle::exact_value(*m.cost) == oracle::exact_value(insts[i].record.optimal_cost));
    }
}

TEST(Evaluate, PermutationInvariantAndParallelDeterministic) {
    auto insts = make_instances(30, 300);
    const auto planners = parse_planners("astar,focal:1.5:random,wastar:1.5");
    const auto base = evaluate(insts, planners, builtin());
    std::mt19937_64 rng(1);
    std::shuffle(insts.begin(), insts.end(), rng);
    EvaluateOptions opts;
    opts.jobs = 3;
    const auto shuffled = evaluate(insts, planners, builtin(), opts);
    EXPECT_EQ(report_json(base.report).dump(), report_json(shuffled.report).dump());
}

TEST(Evaluate, RejectsWrongStoredOptimum) {
    auto insts = make_instances(1, 1);
    insts[0].record.optimal_cost = insts[0].record.optimal_cost + ExactCost{1, 0};
    EXPECT_THROW(evaluate(insts, parse_planners("astar"), builtin()), ContractViolation);
}

TEST(Csv, RoundTrip) {
    const auto insts = make_instances(10, 50);
    const auto ev = evaluate(insts, parse_planners("astar,wastar:3"), builtin());
    std::stringstream buf;
    write_results_csv(buf, ev.metrics);
    const auto back = read_results_csv(buf);
    ASSERT_EQ(back.size(), ev.metrics.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].instance_id, ev.metrics[i].instance_id);
        EXPECT_EQ(back[i].cost_ratio, ev.metrics[i].cost_ratio);
        EXPECT_EQ(back[i].expansions_ratio, ev.metrics[i].expansions_ratio);
        EXPECT_EQ(back[i].hardness, ev.metrics[i].hardness);
        EXPECT_EQ(back[i].cost, ev.metrics[i].cost);
        EXPECT_EQ(back[i].optimal, ev.metrics[i].optimal);
    }
    std::istringstream bad("header\na,b,1\n");
    EXPECT_THROW(read_results_csv(bad), ParseError);
}

TEST(Json, ReportShape) {
    const std::vector<RunMetrics> ms{row("a", "astar", 100, 100, 1.3), row("a", "w", 110, 40, 1.3)};
    AggregateReport r{summarize(ms), bucket_by_hardness(ms)};
    const auto j = report_json(r);
    EXPECT_EQ(j["std_kind"], "population");
    EXPECT_EQ(j["planners"].size(), 2u);
    EXPECT_EQ(j["planners"][0]["cost_ratio"]["mean"], 100.0);
    EXPECT_EQ(j["hardness_buckets"]["buckets"].size(), 8u);
    EXPECT_TRUE(j["hardness_buckets"]["buckets"][3]["hardness_max"].is_null());
    EXPECT_EQ(j["hardness_buckets"]["quantile_method"], "linear interpolation between order statistics");
}

TEST(Json, InstanceRoundTrip) {
    InstanceRecord r;
    r.id = "x_1";
    r.map_id = "m_aug03";
    r.base_map_id = "m";
    r.start = {1, 2};
    r.goal = {30, 4};
    r.optimal_cost = {12, 5};
    r.hardness = 1.234;
    r.split = Split::Test;
    std::stringstream buf;
    buf << instance_json(r, "maps/m_aug03.grid").dump() << "\n\n" << instance_json(r, "b").dump() << "\n";
    const auto lines = read_instances(buf);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0].record, r);
    EXPECT_EQ(lines[0].map_path, "maps/m_aug03.grid");
    std::istringstream bad("{\"id\": 1}\n");
    EXPECT_THROW(read_instances(bad), ParseError);
}
