#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gridpath/cost.hpp"
#include "gridpath/error.hpp"
#include "gridpath/grid.hpp"
#include "gridpath/heuristics.hpp"

namespace gridpath {

/// A pathfinding query. The grid must outlive the task.
struct PTask {
    const GridMap& grid;
    Cell start;
    Cell goal;
};

enum class Algorithm : std::uint8_t { AStar, WAStar, WAStarCF, Focal, GBFSPPM, AStarHL };

inline std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::AStar: return "astar";
        case Algorithm::WAStar: return "wastar";
        case Algorithm::WAStarCF: return "wastar-cf";
        case Algorithm::Focal: return "focal";
        case Algorithm::GBFSPPM: return "gbfs-ppm";
        case Algorithm::AStarHL: return "astar-hl";
    }
    return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
    if (s == "astar") return Algorithm::AStar;
    if (s == "wastar") return Algorithm::WAStar;
    if (s == "wastar-cf") return Algorithm::WAStarCF;
    if (s == "focal") return Algorithm::Focal;
    if (s == "gbfs-ppm") return Algorithm::GBFSPPM;
    if (s == "astar-hl") return Algorithm::AStarHL;
    return std::nullopt;
}

/// Heuristic-map kind each algorithm consumes, if any.
inline std::optional<HeuristicKind> required_map_kind(Algorithm a) {
    switch (a) {
        case Algorithm::WAStarCF: return HeuristicKind::CF;
        case Algorithm::Focal:
        case Algorithm::GBFSPPM: return HeuristicKind::PP;
        case Algorithm::AStarHL: return HeuristicKind::ABS;
        default: return std::nullopt;
    }
}

/// Ordering among nodes with equal primary key.
enum class TieBreak : std::uint8_t { HighG, LowG };

/// cf values at or below this are treated as "no information".
inline constexpr double kCorrectionFactorEpsilon = 1e-6;

struct SearchConfig {
    Algorithm algorithm = Algorithm::AStar;
    double weight = 1.0;
    std::shared_ptr<const HeuristicMap> heuristic_map;
    TieBreak tie_break = TieBreak::HighG;
    std::optional<std::size_t> expansion_limit;
    MovePolicy policy{};
    // Check the focal selection invariant on every expansion and throw on
    // violation.
    bool audit = false;

    static SearchConfig astar() { return {}; }
    static SearchConfig wastar(double w) { return make(Algorithm::WAStar, w, nullptr); }
    static SearchConfig wastar_cf(std::shared_ptr<const HeuristicMap> cf) {
        return make(Algorithm::WAStarCF, 1.0, std::move(cf));
    }
    static SearchConfig focal(double w, std::shared_ptr<const HeuristicMap> pp) {
        return make(Algorithm::Focal, w, std::move(pp));
    }
    static SearchConfig gbfs_ppm(std::shared_ptr<const HeuristicMap> pp) {
        return make(Algorithm::GBFSPPM, 1.0, std::move(pp));
    }
    static SearchConfig astar_hl(std::shared_ptr<const HeuristicMap> abs) {
        return make(Algorithm::AStarHL, 1.0, std::move(abs));
    }

    void validate() const {
        if (!(weight >= 1.0) || !std::isfinite(weight)) throw ContractViolation("weight must be finite and >= 1");
        if (expansion_limit && *expansion_limit == 0) throw ContractViolation("expansion limit must be positive");
        if (auto kind = required_map_kind(algorithm)) {
            if (!heuristic_map) {
                throw KindMismatch(std::string(to_string(algorithm)) + " needs a " + std::string(to_string(*kind)) +
                                   " heuristic map");
            }
            heuristic_map->require(*kind);
        }
    }

private:
    static SearchConfig make(Algorithm a, double w, std::shared_ptr<const HeuristicMap> map) {
        SearchConfig c;
        c.algorithm = a;
        c.weight = w;
        c.heuristic_map = std::move(map);
        c.validate();
        return c;
    }
};

enum class SearchStatus : std::uint8_t { Found, NoPath, LimitExceeded };

inline std::string_view to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::NoPath: return "no_path";
        case SearchStatus::LimitExceeded: return "limit_exceeded";
    }
    return "?";
}

struct SearchResult {
    SearchStatus status = SearchStatus::NoPath;
    std::vector<Cell> path;
    std::optional<ExactCost> cost;
    std::size_t expansions = 0;    // CLOSED insertions, goal included
    std::size_t generated = 0;     // successor inserts and g-improving updates
    std::size_t reexpansions = 0;  // CLOSED insertions of an already-expanded cell
    double f_min_final = 0.0;      // smallest f in OPEN at the last selection

    bool found() const { return status == SearchStatus::Found; }
    friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// Sum of move costs along a path; throws ContractViolation if the path is
/// not a chain of adjacent free cells.
inline ExactCost path_cost(const GridMap& grid, const std::vector<Cell>& path) {
    ExactCost total;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!grid.free(path[i])) throw ContractViolation("path visits a blocked or out-of-bounds cell");
        if (i == 0) continue;
        const int dr = std::abs(path[i].row - path[i - 1].row);
        const int dc = std::abs(path[i].col - path[i - 1].col);
        if (dr > 1 || dc > 1 || dr + dc == 0) throw ContractViolation("path cells are not adjacent");
        total += dr + dc == 2 ? ExactCost::diagonal() : ExactCost::cardinal();
    }
    return total;
}

namespace detail {

inline constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

struct OpenEntry {
    double f;             // primary key for float-keyed variants
    ExactCost f_exact;    // primary key for A*
    ExactCost g;
    float pp;             // secondary heuristic (focal / gbfs)
    std::uint32_t idx;
};

/// Strict "a is preferred over b" for a given variant.
class Preference {
public:
    Preference(Algorithm a, TieBreak t) : algorithm_(a), tie_(t) {}

    bool by_primary(const OpenEntry& a, const OpenEntry& b) const {
        if (algorithm_ == Algorithm::AStar) {
            if (a.f_exact != b.f_exact) return a.f_exact < b.f_exact;
        } else if (a.f != b.f) {
            return a.f < b.f;
        }
        return by_tie(a, b);
    }

    bool by_tie(const OpenEntry& a, const OpenEntry& b) const {
        if (a.g != b.g) return tie_ == TieBreak::HighG ? b.g < a.g : a.g < b.g;
        return a.idx < b.idx;
    }

    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        if (algorithm_ == Algorithm::GBFSPPM && a.pp != b.pp) return a.pp > b.pp;
        return by_primary(a, b);
    }

private:
    Algorithm algorithm_;
    TieBreak tie_;
};

class SearchState {
public:
    SearchState(const PTask& task, const SearchConfig& config)
        : task_(task),
          config_(config),
          map_(config.heuristic_map.get()),
          n_(task.grid.size()),
          g_(n_),
          reached_(n_, 0),
          closed_(n_, 0),
          expanded_(n_, 0),
          parent_(n_, kNoParent) {}

    // Float keys are written as float(g + h) plus an excess term rather than
    // g + key(h). The two are equal in real arithmetic, but this form makes a
    // zero excess (w = 1, cf = 1) reproduce A*'s ordering bit for bit: exact
    // f-ties stay float ties and fall through to the tie-break.
    OpenEntry make_entry(std::uint32_t idx, ExactCost g) const {
        const Cell c = task_.grid.cell_at(idx);
        const ExactCost h = octile(c, task_.goal);
        const double hf = h.to_float();
        const double base = (g + h).to_float();
        OpenEntry e{0.0, {}, g, 0.0f, idx};
        switch (config_.algorithm) {
            case Algorithm::AStar:
                e.f_exact = g + h;
                e.f = base;
                break;
            case Algorithm::WAStar: e.f = base + (config_.weight - 1.0) * hf; break;
            case Algorithm::WAStarCF: {
                const double cf = map_->at(idx);
                if (hf == 0.0) e.f = base;
                else if (!(cf > kCorrectionFactorEpsilon)) e.f = g.to_float() + kUnreachableSentinel;
                else e.f = base + hf * (1.0 / cf - 1.0);
                break;
            }
            case Algorithm::Focal:
            case Algorithm::GBFSPPM:
                e.f = base;
                e.pp = map_->at(idx);
                break;
            case Algorithm::AStarHL: e.f = g.to_float() + static_cast<double>(map_->at(idx)); break;
        }
        return e;
    }

    // Returns true when the successor's g improved.
    bool relax(std::uint32_t from, std::uint32_t to, MoveKind kind, OpenEntry& out) {
        const ExactCost candidate = g_[from] + move_cost(kind);
        if (reached_[to] && !(candidate < g_[to])) return false;
        g_[to] = candidate;
        reached_[to] = 1;
        parent_[to] = from;
        closed_[to] = 0;
        out = make_entry(to, candidate);
        ++result.generated;
        return true;
    }

    void close(std::uint32_t idx) {
        closed_[idx] = 1;
        if (expanded_[idx]) ++result.reexpansions;
        expanded_[idx] = 1;
        ++result.expansions;
    }

    bool stale(const OpenEntry& e) const { return closed_[e.idx] || e.g != g_[e.idx]; }
    bool limit_hit() const { return config_.expansion_limit && result.expansions >= *config_.expansion_limit; }

    void finish(std::uint32_t goal_idx) {
        result.status = SearchStatus::Found;
        std::vector<Cell> rev;
        for (std::uint32_t cur = goal_idx; cur != kNoParent; cur = parent_[cur]) rev.push_back(task_.grid.cell_at(cur));
        result.path.assign(rev.rbegin(), rev.rend());
        // After a reopening, descendants of the improved cell keep their old
        // g while the parent chain already runs through the cheaper route, so
        // the path can cost less than g(goal). Report the path's own cost.
        result.cost = path_cost(task_.grid, result.path);
    }

    void seed(OpenEntry& out) {
        const auto s = static_cast<std::uint32_t>(task_.grid.index(task_.start));
        g_[s] = ExactCost{};
        reached_[s] = 1;
        out = make_entry(s, ExactCost{});
    }

    std::uint32_t goal_index() const { return static_cast<std::uint32_t>(task_.grid.index(task_.goal)); }

    template <class Fn>
    void for_each_successor(std::uint32_t idx, Fn&& fn) const {
        for (const auto& nb : neighbors(task_.grid, task_.grid.cell_at(idx), config_.policy)) {
            fn(static_cast<std::uint32_t>(task_.grid.index(nb.cell)), nb.kind);
        }
    }

    SearchResult result;

private:
    const PTask& task_;
    const SearchConfig& config_;
    const HeuristicMap* map_;
    std::size_t n_;
    std::vector<ExactCost> g_;
    std::vector<std::uint8_t> reached_;
    std::vector<std::uint8_t> closed_;
    std::vector<std::uint8_t> expanded_;
    std::vector<std::uint32_t> parent_;
};

// A*, WA*, WA*+CF, A*+HL and GBFS: a single binary heap with lazy deletion.
inline SearchResult solve_with_heap(const PTask& task, const SearchConfig& config) {
    SearchState state(task, config);
    const Preference prefer(config.algorithm, config.tie_break);
    auto worse = [&prefer](const OpenEntry& a, const OpenEntry& b) { return prefer(b, a); };
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, decltype(worse)> open(worse);

    OpenEntry e{};
    state.seed(e);
    open.push(e);
    const auto goal = state.goal_index();

    while (!open.empty()) {
        const OpenEntry top = open.top();
        open.pop();
        if (state.stale(top)) continue;
        if (state.limit_hit()) {
            state.result.status = SearchStatus::LimitExceeded;
            return state.result;
        }
        state.result.f_min_final = top.f;
        state.close(top.idx);
        if (top.idx == goal) {
            state.finish(goal);
            return state.result;
        }
        state.for_each_successor(top.idx, [&](std::uint32_t next, MoveKind kind) {
            OpenEntry succ{};
            if (state.relax(top.idx, next, kind, succ)) open.push(succ);
        });
    }
    state.result.status = SearchStatus::NoPath;
    return state.result;
}

// Focal search. OPEN is ordered by (f, tie-break); FOCAL holds exactly the
// OPEN entries with f <= w * f_min, ordered by highest pp first.
class FocalSearch {
public:
    FocalSearch(const PTask& task, const SearchConfig& config)
        : task_(task),
          config_(config),
          state_(task, config),
          prefer_(config.algorithm, config.tie_break),
          open_(OpenOrder{&prefer_}),
          focal_(FocalOrder{&prefer_}),
          current_(task.grid.size()),
          in_open_(task.grid.size(), 0) {}

    SearchResult run() {
        OpenEntry e{};
        state_.seed(e);
        insert(e);
        sync_focal();
        const auto goal = state_.goal_index();

        while (!open_.empty()) {
            if (state_.limit_hit()) {
                state_.result.status = SearchStatus::LimitExceeded;
                return state_.result;
            }
            const OpenEntry best = *focal_.begin();
            const double f_min = open_.begin()->f;
            if (best.f > config_.weight * f_min + 1e-9) {
                ++violations_;
                if (config_.audit) throw ContractViolation("focal selection exceeded w * f_min");
            }
            state_.result.f_min_final = f_min;
            erase(best.idx);
            state_.close(best.idx);
            sync_focal();
            if (best.idx == goal) {
                state_.finish(goal);
                return state_.result;
            }
            state_.for_each_successor(best.idx, [&](std::uint32_t next, MoveKind kind) {
                OpenEntry succ{};
                if (!state_.relax(best.idx, next, kind, succ)) return;
                if (in_open_[next]) erase(next);
                insert(succ);
            });
            sync_focal();
        }
        state_.result.status = SearchStatus::NoPath;
        return state_.result;
    }

    std::size_t violations() const { return violations_; }

private:
    struct OpenOrder {
        using is_transparent = void;
        const Preference* prefer;
        bool operator()(const OpenEntry& a, const OpenEntry& b) const { return prefer->by_primary(a, b); }
        bool operator()(const OpenEntry& a, double f) const { return a.f < f; }
        bool operator()(double f, const OpenEntry& b) const { return f < b.f; }
    };
    struct FocalOrder {
        const Preference* prefer;
        bool operator()(const OpenEntry& a, const OpenEntry& b) const {
            if (a.pp != b.pp) return a.pp > b.pp;
            return prefer->by_primary(a, b);
        }
    };

    void insert(const OpenEntry& e) {
        open_.insert(e);
        current_[e.idx] = e;
        in_open_[e.idx] = 1;
        if (has_bound_ && e.f <= bound_) focal_.insert(e);
    }

    void erase(std::uint32_t idx) {
        const OpenEntry& e = current_[idx];
        open_.erase(e);
        focal_.erase(e);
        in_open_[idx] = 0;
    }

    // Bring FOCAL back to {n in OPEN : f(n) <= w * f_min}.
    void sync_focal() {
        if (open_.empty()) {
            focal_.clear();
            has_bound_ = false;
            return;
        }
        const double bound = config_.weight * open_.begin()->f;
        if (!has_bound_) {
            for (auto it = open_.begin(); it != open_.end() && it->f <= bound; ++it) focal_.insert(*it);
        } else if (bound > bound_) {
            for (auto it = open_.upper_bound(bound_); it != open_.end() && it->f <= bound; ++it) focal_.insert(*it);
        } else if (bound < bound_) {
            for (auto it = open_.upper_bound(bound); it != open_.end() && it->f <= bound_; ++it) focal_.erase(*it);
        }
        bound_ = bound;
        has_bound_ = true;
    }

    const PTask& task_;
    const SearchConfig& config_;
    SearchState state_;
    Preference prefer_;
    std::set<OpenEntry, OpenOrder> open_;
    std::set<OpenEntry, FocalOrder> focal_;
    std::vector<OpenEntry> current_;
    std::vector<std::uint8_t> in_open_;
    double bound_ = 0.0;
    bool has_bound_ = false;
    std::size_t violations_ = 0;
};

}  // namespace detail

/// Run one best-first search variant on a task.
inline SearchResult solve(const PTask& task, const SearchConfig& config) {
    config.validate();
    if (!task.grid.free(task.start) || !task.grid.free(task.goal)) {
        throw ContractViolation("start and goal must be free in-bounds cells");
    }
    if (config.heuristic_map && !config.heuristic_map->matches(task.grid)) {
        throw DimensionError("heuristic map dimensions differ from the grid");
    }
    if (config.algorithm == Algorithm::Focal) return detail::FocalSearch(task, config).run();
    return detail::solve_with_heap(task, config);
}

}  // namespace gridpath
