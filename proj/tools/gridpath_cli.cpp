// gridpath: map generation, oracle maps, single solves and benchmarks.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gridpath/gridpath.hpp"

namespace fs = std::filesystem;
using namespace gridpath;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

/// Bad flags or inputs detected by the CLI itself.
class UsageError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "validation_error"; }
};

void report_error(const std::string& kind, const std::string& message, int code) {
    json j = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
    std::cerr << j.dump() << '\n';
}

std::uint64_t env_seed() {
    if (const char* s = std::getenv("GRIDPATH_SEED")) {
        char* end = nullptr;
        const auto v = std::strtoull(s, &end, 10);
        if (end == s || *end != '\0') throw UsageError("GRIDPATH_SEED is not an unsigned integer");
        return v;
    }
    return 0;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, mode);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

Cell parse_cell(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("cell must be 'row,col': " + text);
    try {
        std::size_t a = 0, b = 0;
        const int r = std::stoi(text.substr(0, comma), &a);
        const int c = std::stoi(text.substr(comma + 1), &b);
        if (a != comma || b != text.size() - comma - 1) throw std::invalid_argument(text);
        return {r, c};
    } catch (const std::logic_error&) {
        throw UsageError("cell must be 'row,col': " + text);
    }
}

std::vector<double> parse_edges(const std::string& text) {
    std::vector<double> edges;
    for (auto part : detail::split_on(text, ',')) {
        const auto v = detail::parse_double(part);
        if (!v) throw UsageError("bad bucket edge '" + std::string(part) + "'");
        edges.push_back(*v);
    }
    if (edges.empty() || !std::is_sorted(edges.begin(), edges.end())) {
        throw UsageError("bucket edges must be a non-empty ascending list");
    }
    return edges;
}

// "map_00003_aug07" -> "map_00003"
std::string strip_augmentation(const std::string& map_id) {
    const auto pos = map_id.rfind("_aug");
    if (pos == std::string::npos || pos + 4 == map_id.size()) return map_id;
    for (std::size_t i = pos + 4; i < map_id.size(); ++i)
        if (map_id[i] < '0' || map_id[i] > '9') return map_id;
    return map_id.substr(0, pos);
}

void check_endpoint(const GridMap& g, Cell c, const std::string& what) {
    if (!g.in_bounds(c)) throw RangeError(what + " is outside the map");
    if (g.blocked(c)) throw RangeError(what + " is a blocked cell");
}

// Instances together with their grids; map paths resolve against the
// instance file's directory.
std::vector<BenchInstance> load_instances(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::ios_base::failure("cannot open instance file " + file.string());
    const auto lines = read_instances(in);
    std::map<fs::path, std::shared_ptr<const GridMap>> grids;
    std::vector<BenchInstance> out;
    for (const auto& line : lines) {
        fs::path map_path = line.map_path;
        if (map_path.is_relative()) map_path = file.parent_path() / map_path;
        auto& grid = grids[map_path.lexically_normal()];
        if (!grid) grid = std::make_shared<const GridMap>(load_map_file(map_path));
        check_endpoint(*grid, line.record.start, "start of " + line.record.id);
        check_endpoint(*grid, line.record.goal, "goal of " + line.record.id);
        out.push_back({line.record, grid});
    }
    return out;
}

const BenchInstance& find_instance(const std::vector<BenchInstance>& all, const std::string& id) {
    for (const auto& inst : all)
        if (inst.record.id == id) return inst;
    throw UsageError("no instance with id '" + id + "'");
}

std::optional<Split> parse_split_filter(const std::string& s) {
    if (s == "all") return std::nullopt;
    if (auto v = parse_split(s)) return v;
    throw UsageError("unknown split '" + s + "'");
}

// Run fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// (by index) is rethrown on the caller's thread.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < jobs; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string hmap_name(const std::string& id, HeuristicKind kind) {
    return id + "." + std::string(to_string(kind)) + ".hmap";
}

// ---- gen-maps --------------------------------------------------------------

struct GenMapsArgs {
    std::string style = "rects";
    double density = 0.3;
    std::optional<std::uint64_t> seed;
    int count = 10;
    int tile_size = 32;
    int tiles_per_side = 2;
    bool augment = false;
    std::string out;
};

int run_gen_maps(const GenMapsArgs& a) {
    const auto style = parse_obstacle_style(a.style);
    if (!style) throw UsageError("unknown style '" + a.style + "'");
    if (a.count < 0) throw UsageError("--count must be non-negative");
    MapGenConfig cfg;
    cfg.tile_size = a.tile_size;
    cfg.tiles_per_side = a.tiles_per_side;
    cfg.obstacle_style = *style;
    cfg.density = a.density;
    try {
        cfg.validate();
    } catch (const ContractViolation& e) {
        throw UsageError(e.what());
    }
    if (a.augment && a.tiles_per_side != 2) throw UsageError("--augment needs --tiles-per-side 2");
    const std::uint64_t seed = a.seed.value_or(env_seed());
    const fs::path dir = a.out;
    fs::create_directories(dir);

    json files = json::array();
    auto write = [&](const GridMap& g, const std::string& name) {
        const fs::path path = dir / (name + ".map");
        auto out = open_out(path);
        write_movingai(out, g);
        finish(out, path);
        files.push_back(name + ".map");
    };
    for (int i = 0; i < a.count; ++i) {
        cfg.seed = detail::splitmix64(seed + static_cast<std::uint64_t>(i));
        const GridMap g = generate_map(cfg);
        char name[32];
        std::snprintf(name, sizeof name, "map_%05d", i);
        if (!a.augment) {
            write(g, name);
            continue;
        }
        const auto variants = augment(g);
        for (std::size_t v = 0; v < variants.size(); ++v) {
            char vname[48];
            std::snprintf(vname, sizeof vname, "%s_aug%02zu", name, v);
            write(variants[v], vname);
        }
    }
    const json manifest = {
        {"generator", "procedural"},
        {"note", "procedural approximations of tiled obstacle maps; not the original map content"},
        {"style", to_string(*style)},
        {"density", a.density},
        {"seed", seed},
        {"tile_size", a.tile_size},
        {"tiles_per_side", a.tiles_per_side},
        {"augmented", a.augment},
        {"files", files},
    };
    const fs::path mpath = dir / "manifest.json";
    auto out = open_out(mpath);
    out << manifest.dump(2) << '\n';
    finish(out, mpath);
    std::cout << json{{"maps", files.size()}, {"out", dir.string()}}.dump() << '\n';
    return 0;
}

// ---- gen-instances -------------------------------------------------------

struct GenInstancesArgs {
    std::string maps;
    int per_map = 10;
    double min_hardness = kDefaultMinHardness;
    std::string filter_scope = "test";
    std::optional<std::uint64_t> seed;
    std::uint64_t split_seed = kDefaultSplitSeed;
    std::string out;
};

int run_gen_instances(const GenInstancesArgs& a, MovePolicy policy) {
    if (a.per_map < 0) throw UsageError("--per-map must be non-negative");
    if (a.filter_scope != "test" && a.filter_scope != "all" && a.filter_scope != "none") {
        throw UsageError("--filter-scope must be test, all or none");
    }
    const fs::path dir = a.maps;
    if (!fs::is_directory(dir)) throw std::ios_base::failure("not a directory: " + dir.string());
    std::vector<fs::path> maps;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto ext = e.path().extension();
        if (e.is_regular_file() && (ext == ".map" || ext == ".grid")) maps.push_back(e.path());
    }
    std::sort(maps.begin(), maps.end());
    const std::uint64_t seed = a.seed.value_or(env_seed());
    const fs::path out_path = a.out;
    const fs::path out_dir = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");

    auto out = open_out(out_path);
    std::size_t written = 0, rejected = 0;
    for (const auto& path : maps) {
        const GridMap grid = load_map_file(path);
        const std::string map_id = path.stem().string();
        const std::string base = strip_augmentation(map_id);
        const Split split = split_for(base, a.split_seed);
        const bool filtered = a.filter_scope == "all" || (a.filter_scope == "test" && split == Split::Test);
        const std::uint64_t map_seed = detail::splitmix64(seed ^ detail::fnv1a(map_id));
        const fs::path rel = fs::relative(fs::absolute(path), fs::absolute(out_dir));
        // Rejected samples are redrawn, up to a fixed attempt budget.
        const int budget = 20 * a.per_map;
        int k = 0;
        for (int attempt = 0; attempt < budget && k < a.per_map; ++attempt) {
            auto rec = sample_instance(grid, detail::splitmix64(map_seed + static_cast<std::uint64_t>(attempt)), policy);
            if (!rec) break;  // no two connected free cells
            if (filtered && !(rec->hardness >= a.min_hardness)) {
                ++rejected;
                continue;
            }
            rec->id = map_id + "_" + std::to_string(k);
            rec->map_id = map_id;
            rec->base_map_id = base;
            rec->split = split;
            out << instance_json(*rec, rel.generic_string()).dump() << '\n';
            ++written;
            ++k;
        }
    }
    finish(out, out_path);
    std::cout << json{{"instances", written}, {"rejected", rejected}, {"maps", maps.size()}}.dump() << '\n';
    return 0;
}

// ---- oracle --------------------------------------------------------------

struct OracleArgs {
    std::string instances;
    std::string emit = "all";
    std::string numerator = "grid";
    std::string out;
    unsigned jobs = 1;
};

int run_oracle(const OracleArgs& a, MovePolicy policy) {
    std::vector<HeuristicKind> kinds;
    if (a.emit == "cf") kinds = {HeuristicKind::CF};
    else if (a.emit == "ppm") kinds = {HeuristicKind::PP};
    else if (a.emit == "hstar") kinds = {HeuristicKind::ABS};
    else if (a.emit == "all") kinds = {HeuristicKind::CF, HeuristicKind::PP, HeuristicKind::ABS};
    else throw UsageError("--emit must be cf, ppm, hstar or all");
    PpmNumerator numerator;
    if (a.numerator == "grid") numerator = PpmNumerator::GridOptimal;
    else if (a.numerator == "theta") numerator = PpmNumerator::ThetaCost;
    else throw UsageError("--ppm-numerator must be grid or theta");

    const auto instances = load_instances(a.instances);
    const fs::path dir = a.out;
    fs::create_directories(dir);
    parallel_for(instances.size(), a.jobs, [&](std::size_t i) {
        const auto& inst = instances[i];
        const PTask task{*inst.grid, inst.record.start, inst.record.goal};
        for (const auto kind : kinds) {
            HeuristicMap m = [&] {
                switch (kind) {
                    case HeuristicKind::CF: return cf_map(task.grid, task.goal, policy);
                    case HeuristicKind::PP: return oracle_ppm(task, policy, numerator);
                    case HeuristicKind::ABS: break;
                }
                return hstar_map(task.grid, task.goal, policy);
            }();
            write_hmap_file(m, dir / hmap_name(inst.record.id, kind));
        }
    });
    std::cout << json{{"instances", instances.size()}, {"files", instances.size() * kinds.size()}}.dump() << '\n';
    return 0;
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
    std::string instances;
    std::string instance;
    std::string map;
    std::string start;
    std::string goal;
    std::string algo = "astar";
    double w = kDefaultWeight;
    std::string hmap;
    std::string hmaps;
    bool oracle = false;
    std::string tie_break = "high-g";
    bool json_out = false;
    bool raw_pp = false;
    std::optional<std::size_t> expansion_limit;
};

int run_solve(const SolveArgs& a, MovePolicy policy) {
    const auto algo = parse_algorithm(a.algo);
    if (!algo) throw UsageError("unknown algorithm '" + a.algo + "'");
    TieBreak tie;
    if (a.tie_break == "high-g") tie = TieBreak::HighG;
    else if (a.tie_break == "low-g") tie = TieBreak::LowG;
    else throw UsageError("--tie-break must be high-g or low-g");
    if (!(a.w >= 1.0)) throw UsageError("--w must be at least 1");
    const int sources = !a.hmap.empty() + !a.hmaps.empty() + a.oracle;
    if (required_map_kind(*algo) && sources != 1) {
        throw UsageError(a.algo + " needs exactly one of --hmap, --hmaps or --oracle");
    }
    if (!required_map_kind(*algo) && sources != 0) throw UsageError(a.algo + " takes no heuristic map");

    BenchInstance inst;
    std::optional<ExactCost> known_optimal;
    if (!a.instances.empty()) {
        if (a.instance.empty()) throw UsageError("--instances needs --instance ID");
        if (!a.map.empty()) throw UsageError("give either --instances or --map, not both");
        const auto all = load_instances(a.instances);
        inst = find_instance(all, a.instance);
        known_optimal = inst.record.optimal_cost;
    } else {
        if (a.map.empty() || a.start.empty() || a.goal.empty()) {
            throw UsageError("give --instances FILE --instance ID, or --map FILE --start r,c --goal r,c");
        }
        inst.record.start = parse_cell(a.start);
        inst.record.goal = parse_cell(a.goal);
        inst.grid = std::make_shared<const GridMap>(load_map_file(a.map));
        inst.record.id = fs::path(a.map).stem().string();
        check_endpoint(*inst.grid, inst.record.start, "start");
        check_endpoint(*inst.grid, inst.record.goal, "goal");
    }

    SearchConfig cfg;
    cfg.algorithm = *algo;
    const bool weighted = *algo == Algorithm::WAStar || *algo == Algorithm::Focal;
    cfg.weight = weighted ? a.w : 1.0;
    cfg.tie_break = tie;
    cfg.policy = policy;
    cfg.expansion_limit = a.expansion_limit;
    if (const auto kind = required_map_kind(*algo)) {
        if (a.oracle) {
            cfg.heuristic_map = builtin_map(inst, *kind, MapSource::Oracle, policy);
        } else {
            const fs::path path = !a.hmap.empty() ? fs::path(a.hmap) : fs::path(a.hmaps) / hmap_name(inst.record.id, *kind);
            auto r = read_hmap_file(path, {.raw_pp = a.raw_pp});
            if (r.map.kind() != *kind) {
                throw KindMismatch(a.algo + " needs a " + std::string(to_string(*kind)) + " map, got " +
                                   std::string(to_string(r.map.kind())));
            }
            if (!r.map.matches(*inst.grid)) throw DimensionError("heuristic map dimensions differ from the grid");
            cfg.heuristic_map = std::make_shared<const HeuristicMap>(std::move(r.map));
        }
    }

    const PTask task{*inst.grid, inst.record.start, inst.record.goal};
    const SearchResult r = solve(task, cfg);
    if (a.json_out) {
        json j = {{"instance", inst.record.id}, {"algorithm", to_string(*algo)}, {"weight", cfg.weight}};
        j.update(search_result_json(r));
        if (known_optimal) {
            j["optimal_cost"] = cost_json(*known_optimal);
            j["optimal"] = r.cost && *r.cost == *known_optimal;
        }
        std::cout << j.dump() << '\n';
    } else {
        std::cout << inst.record.id << ": " << to_string(r.status);
        if (r.cost) std::cout << " cost=" << r.cost->to_float();
        std::cout << " expansions=" << r.expansions << " path_length=" << r.path.size() << '\n';
    }
    return 0;
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
    std::string instances;
    std::string planners = "astar,wastar:2";
    std::string hmaps;
    std::string out;
    std::string split = "all";
    std::string buckets = "1.05,1.25,1.5,2.0";
    unsigned jobs = 1;
    bool raw_pp = false;
};

int run_bench(const BenchArgs& a, MovePolicy policy) {
    std::vector<PlannerSpec> planners;
    try {
        planners = parse_planners(a.planners);
    } catch (const ContractViolation& e) {
        throw UsageError(e.what());
    }
    const auto split = parse_split_filter(a.split);
    const auto edges = parse_edges(a.buckets);
    const bool needs_files = std::any_of(planners.begin(), planners.end(), [](const PlannerSpec& p) {
        return required_map_kind(p.algorithm) && p.source == MapSource::File;
    });
    if (needs_files && a.hmaps.empty()) throw UsageError("planners reading map files need --hmaps DIR");

    auto instances = load_instances(a.instances);
    if (split) std::erase_if(instances, [&](const BenchInstance& i) { return i.record.split != *split; });

    const fs::path hdir = a.hmaps;
    const HmapReadOptions read_opts{.raw_pp = a.raw_pp};
    const MapProvider provider = [&](const BenchInstance& inst, HeuristicKind kind,
                                     MapSource source) -> std::shared_ptr<const HeuristicMap> {
        if (source != MapSource::File) return builtin_map(inst, kind, source, policy);
        auto r = read_hmap_file(hdir / hmap_name(inst.record.id, kind), read_opts);
        if (r.map.kind() != kind) throw KindMismatch("wrong map kind for " + inst.record.id);
        if (!r.map.matches(*inst.grid)) throw DimensionError("map dimensions differ for " + inst.record.id);
        return std::make_shared<const HeuristicMap>(std::move(r.map));
    };

    // Provider failures inside worker threads surface as ContractViolation;
    // preflight the file maps here so their real kind reaches the exit code.
    if (needs_files) {
        for (const auto& inst : instances)
            for (const auto& p : planners)
                if (auto kind = required_map_kind(p.algorithm); kind && p.source == MapSource::File) {
                    const auto path = hdir / hmap_name(inst.record.id, *kind);
                    if (!fs::exists(path)) throw std::ios_base::failure("missing heuristic map " + path.string());
                }
    }

    EvaluateOptions opts;
    opts.policy = policy;
    opts.jobs = a.jobs;
    opts.bucket_edges = edges;
    const Evaluation ev = evaluate(instances, planners, provider, opts);

    const fs::path dir = a.out;
    fs::create_directories(dir);
    {
        const auto path = dir / "results.csv";
        auto out = open_out(path);
        write_results_csv(out, ev.metrics);
        finish(out, path);
    }
    json report = report_json(ev.report);
    report["instances"] = instances.size();
    json specs = json::array();
    for (const auto& p : planners) {
        specs.push_back({{"planner", p.id},
                         {"algorithm", to_string(p.algorithm)},
                         {"weight", p.weight},
                         {"map_source", to_string(p.source)}});
    }
    report["planner_specs"] = std::move(specs);
    {
        const auto path = dir / "report.json";
        auto out = open_out(path);
        out << report.dump(2) << '\n';
        finish(out, path);
    }
    for (const auto& p : ev.report.planners) {
        std::cout << p.planner_id << ": optimal " << p.optimal_found_ratio << "%, cost " << p.cost_ratio.mean
                  << " +- " << p.cost_ratio.std << ", expansions " << p.expansions_ratio.mean << " +- "
                  << p.expansions_ratio.std << '\n';
    }
    return 0;
}

// ---- boxplot-data --------------------------------------------------------

struct BoxplotArgs {
    std::string results;
    std::string buckets = "1.05,1.25,1.5,2.0";
    std::string out = "boxplot.json";
};

int run_boxplot(const BoxplotArgs& a) {
    const auto edges = parse_edges(a.buckets);
    std::ifstream in(a.results);
    if (!in) throw std::ios_base::failure("cannot open results file " + a.results);
    const auto metrics = read_results_csv(in);
    const auto buckets = bucket_by_hardness(metrics, edges);
    const fs::path path = a.out;
    auto out = open_out(path);
    out << buckets_json(buckets).dump(2) << '\n';
    finish(out, path);
    return 0;
}

const char* kPlannerHelp =
    "Planner SPEC: comma-separated terms name[:w][:source].\n"
    "  name    astar | wastar | wastar-cf | focal | gbfs-ppm | astar-hl\n"
    "  w       suboptimality factor for wastar and focal (default 2)\n"
    "  source  where the heuristic map comes from: file (default, read\n"
    "          <hmaps>/<id>.<kind>.hmap), oracle, zero or random\n"
    "  e.g. astar,wastar:2,focal:2:oracle,wastar-cf:file";

int run(int argc, char** argv) {
    CLI::App app{"Grid pathfinding workbench"};
    app.require_subcommand(1);
    app.fallthrough();
    bool no_corner_cutting = false;
    app.add_flag("--no-corner-cutting", no_corner_cutting, "Forbid diagonal moves past a blocked cardinal cell");

    GenMapsArgs gm;
    auto* gen_maps = app.add_subcommand("gen-maps", "Generate procedural tiled obstacle maps (MovingAI format)");
    gen_maps->add_option("--style", gm.style, "rects | scatter | maze")->capture_default_str();
    gen_maps->add_option("--density", gm.density, "Obstacle density in [0, 1)")->capture_default_str();
    gen_maps->add_option("--seed", gm.seed, "Seed (falls back to GRIDPATH_SEED, then 0)");
    gen_maps->add_option("--count", gm.count, "Number of base maps")->capture_default_str();
    gen_maps->add_option("--tile-size", gm.tile_size)->capture_default_str();
    gen_maps->add_option("--tiles-per-side", gm.tiles_per_side)->capture_default_str();
    gen_maps->add_flag("--augment", gm.augment, "Write the 16 quadrant-transformed variants of each map");
    gen_maps->add_option("--out", gm.out, "Output directory")->required();

    GenInstancesArgs gi;
    auto* gen_inst = app.add_subcommand("gen-instances", "Sample start/goal instances on every map in a directory");
    gen_inst->add_option("--maps", gi.maps, "Directory of .map files")->required();
    gen_inst->add_option("--per-map,--instances-per-map", gi.per_map)->capture_default_str();
    gen_inst->add_option("--min-hardness", gi.min_hardness)->capture_default_str();
    gen_inst->add_option("--filter-scope", gi.filter_scope, "Splits the hardness filter applies to: test | all | none")
        ->capture_default_str();
    gen_inst->add_option("--seed", gi.seed, "Seed (falls back to GRIDPATH_SEED, then 0)");
    gen_inst->add_option("--split-seed", gi.split_seed)->capture_default_str();
    gen_inst->add_option("--out", gi.out, "Output JSON-lines file")->required();

    OracleArgs oa;
    auto* oracle = app.add_subcommand("oracle", "Write ground-truth heuristic maps (HMAP) for each instance");
    oracle->add_option("--instances", oa.instances)->required();
    oracle->add_option("--emit", oa.emit, "cf | ppm | hstar | all")->capture_default_str();
    oracle->add_option("--ppm-numerator", oa.numerator, "grid | theta")->capture_default_str();
    oracle->add_option("--out", oa.out, "Output directory")->required();
    oracle->add_option("--jobs", oa.jobs)->capture_default_str();

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
    solve_cmd->add_option("--instances", sa.instances, "Instance file");
    solve_cmd->add_option("--instance", sa.instance, "Instance id within --instances");
    solve_cmd->add_option("--map", sa.map, "Map file (instead of --instances)");
    solve_cmd->add_option("--start", sa.start, "row,col");
    solve_cmd->add_option("--goal", sa.goal, "row,col");
    solve_cmd->add_option("--algo", sa.algo, "astar | wastar | wastar-cf | focal | gbfs-ppm | astar-hl")
        ->capture_default_str();
    solve_cmd->add_option("--w", sa.w, "Suboptimality factor")->capture_default_str();
    solve_cmd->add_option("--hmap", sa.hmap, "Heuristic map file");
    solve_cmd->add_option("--hmaps", sa.hmaps, "Directory of <id>.<kind>.hmap files");
    solve_cmd->add_flag("--oracle", sa.oracle, "Compute the ground-truth map in-process");
    solve_cmd->add_option("--tie-break", sa.tie_break, "high-g | low-g")->capture_default_str();
    solve_cmd->add_flag("--json", sa.json_out);
    solve_cmd->add_flag("--raw-pp", sa.raw_pp, "Accept path-probability values without clamping");
    solve_cmd->add_option("--expansion-limit", sa.expansion_limit);

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Run planners against A* on an instance set");
    bench->footer(kPlannerHelp);
    bench->add_option("--instances", ba.instances)->required();
    bench->add_option("--planners", ba.planners, "Planner SPEC (see below)")->capture_default_str();
    bench->add_option("--hmaps", ba.hmaps, "Directory of <id>.<kind>.hmap files");
    bench->add_option("--out", ba.out, "Output directory for results.csv and report.json")->required();
    bench->add_option("--split", ba.split, "all | train | val | test")->capture_default_str();
    bench->add_option("--buckets", ba.buckets, "Hardness bucket lower edges")->capture_default_str();
    bench->add_option("--jobs", ba.jobs)->capture_default_str();
    bench->add_flag("--raw-pp", ba.raw_pp, "Accept path-probability values without clamping");

    BoxplotArgs bx;
    auto* boxplot = app.add_subcommand("boxplot-data", "Per-bucket five-number summaries from results.csv");
    boxplot->add_option("--results", bx.results)->required();
    boxplot->add_option("--buckets", bx.buckets)->capture_default_str();
    boxplot->add_option("--out", bx.out)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("validation_error", e.what(), kExitValidation);
        return kExitValidation;
    }

    const MovePolicy policy = no_corner_cutting ? MovePolicy::no_corner_cutting() : MovePolicy::permissive();
    if (*gen_maps) return run_gen_maps(gm);
    if (*gen_inst) return run_gen_instances(gi, policy);
    if (*oracle) return run_oracle(oa, policy);
    if (*solve_cmd) return run_solve(sa, policy);
    if (*bench) return run_bench(ba, policy);
    return run_boxplot(bx);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ContractViolation& e) {
        report_error(e.kind(), e.what(), kExitInternal);
        return kExitInternal;
    } catch (const NoPathError& e) {
        report_error(e.kind(), e.what(), kExitInternal);
        return kExitInternal;
    } catch (const Error& e) {
        report_error(e.kind(), e.what(), kExitValidation);
        return kExitValidation;
    } catch (const json::exception& e) {
        report_error("format_error", e.what(), kExitValidation);
        return kExitValidation;
    } catch (const fs::filesystem_error& e) {
        report_error("io_error", e.what(), kExitIo);
        return kExitIo;
    } catch (const std::ios_base::failure& e) {
        report_error("io_error", e.what(), kExitIo);
        return kExitIo;
    } catch (const std::exception& e) {
        report_error("internal_error", e.what(), kExitInternal);
        return kExitInternal;
    }
}
