#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const fs::path kData = GRIDPATH_TEST_DATA;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("gridpath_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Outcome run(const std::string& args, const std::string& env = "") const {
        const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
        const std::string cmd = env + " '" + std::string(GRIDPATH_CLI) + "' " + args + " >'" + out.string() + "' 2>'" +
                                err.string() + "'";
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
    }

    // Small generated dataset: maps, instances (all splits kept).
    fs::path dataset(int count = 2, int seed = 7) const {
        EXPECT_EQ(run("gen-maps --style rects --count " + std::to_string(count) + " --seed " + std::to_string(seed) +
                      " --tile-size 12 --out '" + (dir_ / "maps").string() + "'")
                      .code,
                  0);
        const auto inst = dir_ / "inst" / "instances.jsonl";
        EXPECT_EQ(run("gen-instances --maps '" + (dir_ / "maps").string() + "' --per-map 6 --seed 3 --out '" +
                      inst.string() + "'")
                      .code,
                  0);
        return inst;
    }

    std::vector<json> lines(const fs::path& p) const {
        std::vector<json> out;
        std::istringstream in(slurp(p));
        for (std::string l; std::getline(in, l);)
            if (!l.empty()) out.push_back(json::parse(l));
        return out;
    }

    static json error_of(const Outcome& r) {
        const auto j = json::parse(r.err);
        EXPECT_TRUE(j.contains("error"));
        EXPECT_EQ(j["error"]["exit_code"].get<int>(), r.code);
        EXPECT_TRUE(j["error"]["kind"].is_string());
        EXPECT_TRUE(j["error"]["message"].is_string());
        return j["error"];
    }

    // Keys and value types only; numbers collapse to "number".
    static json shape(const json& j) {
        if (j.is_object()) {
            json o = json::object();
            for (auto it = j.begin(); it != j.end(); ++it) o[it.key()] = shape(it.value());
            return o;
        }
        if (j.is_array()) return j.empty() ? json::array() : json::array({shape(j.front())});
        if (j.is_number()) return "number";
        if (j.is_string()) return "string";
        if (j.is_boolean()) return "boolean";
        return "null";
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, SolveCorridor) {
    const auto r = run("solve --instances '" + (kData / "corridor" / "corridor.jsonl").string() +
                       "' --instance corridor --algo astar --json");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["status"], "found");
    EXPECT_EQ(j["cost"]["value"].get<double>(), 2.0);
    EXPECT_EQ(j["cost"]["cardinals"].get<int>(), 2);
    EXPECT_EQ(j["expansions"].get<int>(), 3);
    EXPECT_EQ(j["path"], json::parse("[[0,0],[0,1],[0,2]]"));
    EXPECT_TRUE(j["optimal"].get<bool>());
}

TEST_F(Cli, SolveByMapAndCells) {
    const auto r = run("solve --map '" + (kData / "corridor" / "corridor.map").string() +
                       "' --start 0,2 --goal 0,0 --json");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["cost"]["value"].get<double>(), 2.0);
}

TEST_F(Cli, BenchReferenceRowIsIdentity) {
    const auto inst = dataset();
    const auto r = run("bench --instances '" + inst.string() + "' --planners astar,wastar:2 --out '" +
                       (dir_ / "bench").string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = json::parse(slurp(dir_ / "bench" / "report.json"));
    const auto& astar = report["planners"][0];
    EXPECT_EQ(astar["planner"], "astar");
    EXPECT_EQ(astar["optimal_found_ratio"].get<double>(), 100.0);
    EXPECT_EQ(astar["cost_ratio"]["mean"].get<double>(), 100.0);
    EXPECT_EQ(astar["expansions_ratio"]["mean"].get<double>(), 100.0);
    EXPECT_EQ(astar["cost_ratio"]["std"].get<double>(), 0.0);
    const auto& wa = report["planners"][1];
    EXPECT_EQ(wa["planner"], "wastar:2");
    EXPECT_LE(wa["cost_ratio"]["mean"].get<double>(), 200.0);
    EXPECT_GE(wa["cost_ratio"]["mean"].get<double>(), 100.0);

    // results.csv: header plus one row per (instance, planner).
    std::istringstream csv(slurp(dir_ / "bench" / "results.csv"));
    std::size_t rows = 0;
    for (std::string l; std::getline(csv, l);) ++rows;
    EXPECT_EQ(rows, 1 + 2 * lines(inst).size());
}

TEST_F(Cli, OracleCfDrivesOptimalWastarCf) {
    const auto inst = dataset(3, 11);
    const auto hm = dir_ / "hm";
    ASSERT_EQ(run("oracle --instances '" + inst.string() + "' --emit cf --out '" + hm.string() + "'").code, 0);
    const auto records = lines(inst);
    ASSERT_FALSE(records.empty());
    for (const auto& rec : records) {
        const std::string id = rec["id"];
        const auto file = hm / (id + ".cf.hmap");
        ASSERT_TRUE(fs::exists(file)) << id;
        EXPECT_FALSE(fs::exists(hm / (id + ".pp.hmap")));
        const auto r = run("solve --instances '" + inst.string() + "' --instance " + id +
                           " --algo wastar-cf --hmap '" + file.string() + "' --json");
        ASSERT_EQ(r.code, 0) << r.err;
        const auto j = json::parse(r.out);
        EXPECT_TRUE(j["optimal"].get<bool>()) << id;
        EXPECT_EQ(j["cost"], rec["optimal_cost"]) << id;
    }
}

TEST_F(Cli, OracleEmitAllAndFileBench) {
    const auto inst = dataset();
    const auto hm = dir_ / "hm";
    ASSERT_EQ(run("oracle --instances '" + inst.string() + "' --emit all --jobs 2 --out '" + hm.string() + "'").code,
              0);
    const auto n = lines(inst).size();
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(hm)) files += e.path().extension() == ".hmap";
    EXPECT_EQ(files, 3 * n);
    const auto r = run("bench --instances '" + inst.string() +
                       "' --planners astar,wastar-cf,focal:2,gbfs-ppm,astar-hl --hmaps '" + hm.string() +
                       "' --out '" + (dir_ / "b").string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = json::parse(slurp(dir_ / "b" / "report.json"));
    ASSERT_EQ(report["planners"].size(), 5u);
    EXPECT_EQ(report["planners"][1]["optimal_found_ratio"].get<double>(), 100.0);  // wastar-cf
    EXPECT_EQ(report["planners"][4]["optimal_found_ratio"].get<double>(), 100.0);  // astar-hl with h*
    EXPECT_LE(report["planners"][2]["cost_ratio"]["mean"].get<double>(), 200.0);
}

TEST_F(Cli, BoxplotData) {
    const auto inst = dataset();
    ASSERT_EQ(run("bench --instances '" + inst.string() + "' --planners astar,wastar:1.5 --out '" +
                  (dir_ / "b").string() + "'")
                  .code,
              0);
    const auto out = dir_ / "box.json";
    const auto r = run("boxplot-data --results '" + (dir_ / "b" / "results.csv").string() +
                       "' --buckets 1.05,1.25,1.5,2.0 --out '" + out.string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(slurp(out));
    ASSERT_EQ(j["buckets"].size(), 2u * 4u);
    EXPECT_EQ(j["buckets"][0]["hardness_min"].get<double>(), 1.05);
    EXPECT_TRUE(j["buckets"][3]["hardness_max"].is_null());
    std::size_t counted = 0;
    for (std::size_t i = 0; i < 4; ++i) counted += j["buckets"][i]["count"].get<std::size_t>();
    std::size_t eligible = 0;
    for (const auto& rec : lines(inst)) eligible += rec["hardness"].get<double>() >= 1.05;
    EXPECT_EQ(counted, eligible);
}

TEST_F(Cli, GoldenReportSchema) {
    const auto inst = dataset();
    ASSERT_EQ(run("bench --instances '" + inst.string() + "' --planners astar,wastar:2,focal:2:zero --out '" +
                  (dir_ / "b").string() + "'")
                  .code,
              0);
    const auto got = shape(json::parse(slurp(dir_ / "b" / "report.json")));
    const auto golden = json::parse(slurp(fs::path(GRIDPATH_TEST_DATA) / "golden" / "report_schema.json"));
    EXPECT_EQ(got, golden) << got.dump(2);
}

TEST_F(Cli, Deterministic) {
    const auto a = dir_ / "a", b = dir_ / "b";
    ASSERT_EQ(run("gen-maps --style maze --count 2 --seed 5 --tile-size 10 --augment --out '" + a.string() + "'").code,
              0);
    ASSERT_EQ(run("gen-maps --style maze --count 2 --tile-size 10 --augment --out '" + b.string() + "'",
                  "GRIDPATH_SEED=5")
                  .code,
              0);
    std::size_t maps = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path();
        maps += e.path().extension() == ".map";
    }
    EXPECT_EQ(maps, 32u);
    EXPECT_TRUE(fs::exists(a / "map_00001_aug15.map"));

    for (const auto& d : {a, b}) {
        ASSERT_EQ(run("gen-instances --maps '" + d.string() + "' --per-map 2 --seed 9 --out '" +
                      (d / "i.jsonl").string() + "'")
                      .code,
                  0);
        ASSERT_EQ(run("bench --instances '" + (d / "i.jsonl").string() +
                      "' --planners astar,focal:2:random,wastar:4 --jobs 2 --out '" + (d / "r").string() + "'")
                      .code,
                  0);
    }
    EXPECT_EQ(slurp(a / "i.jsonl"), slurp(b / "i.jsonl"));
    EXPECT_EQ(slurp(a / "r" / "results.csv"), slurp(b / "r" / "results.csv"));
    EXPECT_EQ(slurp(a / "r" / "report.json"), slurp(b / "r" / "report.json"));

    // Augmented variants of one base map share its split.
    for (const auto& rec : lines(a / "i.jsonl")) {
        const std::string base = rec["base_map_id"];
        EXPECT_EQ(rec["map_id"].get<std::string>().substr(0, base.size()), base);
    }
}

TEST_F(Cli, HardnessFilterOnTestSplit) {
    ASSERT_EQ(run("gen-maps --style scatter --density 0.05 --count 12 --seed 1 --tile-size 10 --out '" +
                  (dir_ / "m").string() + "'")
                  .code,
              0);
    ASSERT_EQ(run("gen-instances --maps '" + (dir_ / "m").string() + "' --per-map 5 --seed 1 --out '" +
                  (dir_ / "i.jsonl").string() + "'")
                  .code,
              0);
    for (const auto& rec : lines(dir_ / "i.jsonl"))
        if (rec["split"] == "test") EXPECT_GE(rec["hardness"].get<double>(), 1.05) << rec["id"];
}

TEST_F(Cli, ValidationErrorsExitOne) {
    const std::string corridor = "'" + (kData / "corridor" / "corridor.jsonl").string() + "'";
    for (const std::string args : {
             std::string("solve --instances ") + corridor + " --instance corridor --algo nope",
             std::string("solve --instances ") + corridor + " --instance missing",
             std::string("solve --instances ") + corridor + " --instance corridor --algo focal",
             std::string("solve --map x.map --start 0 --goal 1,1"),
             std::string("bench --instances ") + corridor + " --planners 'wastar:0.5' --out /tmp/x",
             std::string("bench --instances ") + corridor + " --planners '' --out /tmp/x",
             std::string("bench --instances ") + corridor + " --planners focal:2 --out /tmp/x",
             std::string("gen-maps --density 1.5 --out /tmp/x"),
             std::string("oracle --instances ") + corridor + " --emit nope --out /tmp/x",
             std::string("frobnicate"),
             std::string("solve --bogus-flag"),
         }) {
        const auto r = run(args);
        EXPECT_EQ(r.code, 1) << args << "\n" << r.err;
        error_of(r);
    }
}

TEST_F(Cli, MalformedInputsExitOne) {
    const auto bad = dir_ / "bad.jsonl";
    std::ofstream(bad) << "{\"id\": \"x\", not json\n";
    auto r = run("bench --instances '" + bad.string() + "' --planners astar --out '" + (dir_ / "o").string() + "'");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(error_of(r)["kind"], "parse_error");

    const auto hm = dir_ / "x.cf.hmap";
    std::ofstream(hm) << "HMAP garbage";
    r = run("solve --instances '" + (kData / "corridor" / "corridor.jsonl").string() +
            "' --instance corridor --algo wastar-cf --hmap '" + hm.string() + "'");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(error_of(r)["kind"], "format_error");

    // A pp map handed to an algorithm that needs cf.
    ASSERT_EQ(run("oracle --instances '" + (kData / "corridor" / "corridor.jsonl").string() + "' --emit ppm --out '" +
                  dir_.string() + "'")
                  .code,
              0);
    r = run("solve --instances '" + (kData / "corridor" / "corridor.jsonl").string() +
            "' --instance corridor --algo wastar-cf --hmap '" + (dir_ / "corridor.pp.hmap").string() + "'");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(error_of(r)["kind"], "kind_mismatch");
}

TEST_F(Cli, IoErrorsExitTwo) {
    auto r = run("solve --map '" + (dir_ / "missing.map").string() + "' --start 0,0 --goal 0,1");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(error_of(r)["kind"], "io_error");
    r = run("boxplot-data --results '" + (dir_ / "missing.csv").string() + "' --out '" + (dir_ / "o.json").string() +
            "'");
    EXPECT_EQ(r.code, 2);
    error_of(r);
    r = run("bench --instances '" + (kData / "corridor" / "corridor.jsonl").string() + "' --planners wastar-cf --hmaps '" +
            (dir_ / "nothing").string() + "' --out '" + (dir_ / "o").string() + "'");
    EXPECT_EQ(r.code, 2);
    error_of(r);
}

TEST_F(Cli, WrongStoredOptimumExitsThree) {
    fs::copy_file(kData / "corridor" / "corridor.map", dir_ / "corridor.map");
    std::ofstream(dir_ / "i.jsonl")
        << R"({"id":"c","map":"corridor.map","start":[0,0],"goal":[0,2],)"
           R"("optimal_cost":{"cardinals":3,"diagonals":0},"hardness":1.0,"split":"test"})"
        << '\n';
    const auto r = run("bench --instances '" + (dir_ / "i.jsonl").string() + "' --planners astar --out '" +
                       (dir_ / "o").string() + "'");
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(error_of(r)["kind"], "contract_violation");
}

TEST_F(Cli, HelpDocumentsPlannerGrammar) {
    const auto r = run("bench --help");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("name[:w][:source]"), std::string::npos);
    EXPECT_NE(r.out.find("gbfs-ppm"), std::string::npos);
}
