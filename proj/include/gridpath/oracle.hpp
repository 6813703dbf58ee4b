#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "gridpath/cost.hpp"
#include "gridpath/error.hpp"
#include "gridpath/grid.hpp"
#include "gridpath/heuristics.hpp"
#include "gridpath/search.hpp"

namespace gridpath {

/// Exact shortest-path costs from one source to every cell.
class DistanceMap {
public:
    DistanceMap(Cell source, int height, int width)
        : source_(source),
          height_(height),
          width_(width),
          values_(static_cast<std::size_t>(height) * width),
          reached_(static_cast<std::size_t>(height) * width, 0) {}

    Cell source() const { return source_; }
    int height() const { return height_; }
    int width() const { return width_; }

    std::optional<ExactCost> at(Cell c) const {
        const auto i = index(c);
        if (!reached_[i]) return std::nullopt;
        return values_[i];
    }
    bool reachable(Cell c) const { return reached_[index(c)] != 0; }
    std::size_t reachable_count() const {
        return static_cast<std::size_t>(std::count(reached_.begin(), reached_.end(), 1));
    }

    void set(Cell c, ExactCost v) {
        const auto i = index(c);
        values_[i] = v;
        reached_[i] = 1;
    }

    friend bool operator==(const DistanceMap&, const DistanceMap&) = default;

private:
    std::size_t index(Cell c) const {
        if (c.row < 0 || c.row >= height_ || c.col < 0 || c.col >= width_) {
            throw ContractViolation("distance map lookup out of bounds");
        }
        return static_cast<std::size_t>(c.row) * width_ + c.col;
    }

    Cell source_;
    int height_;
    int width_;
    std::vector<ExactCost> values_;
    std::vector<std::uint8_t> reached_;
};

/// Uninformed search from `source`. Moves are symmetric under both corner
/// rules, so this is also the cost-to-go towards `source`.
inline DistanceMap dijkstra_map(const GridMap& grid, Cell source, MovePolicy policy = {}) {
    if (!grid.free(source)) throw ContractViolation("dijkstra source must be a free cell");
    DistanceMap dist(source, grid.height(), grid.width());
    using Item = std::pair<ExactCost, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    std::vector<std::uint8_t> done(grid.size(), 0);
    std::vector<ExactCost> best(grid.size());
    std::vector<std::uint8_t> seen(grid.size(), 0);

    const auto s = static_cast<std::uint32_t>(grid.index(source));
    seen[s] = 1;
    open.push({ExactCost{}, s});
    while (!open.empty()) {
        const auto [d, idx] = open.top();
        open.pop();
        if (done[idx]) continue;
        done[idx] = 1;
        const Cell c = grid.cell_at(idx);
        dist.set(c, d);
        for (const auto& nb : neighbors(grid, c, policy)) {
            const auto n = static_cast<std::uint32_t>(grid.index(nb.cell));
            if (done[n]) continue;
            const ExactCost cand = d + move_cost(nb.kind);
            if (!seen[n] || cand < best[n]) {
                seen[n] = 1;
                best[n] = cand;
                open.push({cand, n});
            }
        }
    }
    return dist;
}

/// cf(n) = octile(n, goal) / h*(n); 1 at the goal, 0 at blocked or
/// unreachable cells.
inline HeuristicMap cf_map(const GridMap& grid, Cell goal, MovePolicy policy = {}) {
    const DistanceMap dist = dijkstra_map(grid, goal, policy);
    std::vector<float> values(grid.size(), 0.0f);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Cell c = grid.cell_at(i);
        if (c == goal) {
            values[i] = 1.0f;
        } else if (auto h = dist.at(c)) {
            values[i] = static_cast<float>(octile(c, goal).to_float() / h->to_float());
        }
    }
    return {HeuristicKind::CF, grid.height(), grid.width(), std::move(values)};
}

/// Perfect cost-to-go as floats; sentinel at unreachable free cells.
inline HeuristicMap hstar_map(const GridMap& grid, Cell goal, MovePolicy policy = {}) {
    const DistanceMap dist = dijkstra_map(grid, goal, policy);
    std::vector<float> values(grid.size(), 0.0f);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Cell c = grid.cell_at(i);
        if (grid.blocked(c)) continue;
        const auto h = dist.at(c);
        values[i] = h ? static_cast<float>(h->to_float()) : static_cast<float>(kUnreachableSentinel);
    }
    return {HeuristicKind::ABS, grid.height(), grid.width(), std::move(values)};
}

/// Walk every cell whose interior the segment between the centers of `a` and
/// `b` crosses, in order. `visit(Cell)` sees each such cell (a and b
/// included). When the segment passes exactly through a lattice corner,
/// `corner(side1, side2)` is called with the two cells that only touch the
/// segment at that point. Either callback returns false to stop the walk.
/// Integer arithmetic only: crossing parameters are compared as
/// (2k+1)*|dr| vs (2j+1)*|dc|.
template <class Visit, class Corner>
bool walk_segment(Cell a, Cell b, Visit&& visit, Corner&& corner) {
    const long dr = b.row - a.row;
    const long dc = b.col - a.col;
    const int sr = dr > 0 ? 1 : (dr < 0 ? -1 : 0);
    const int sc = dc > 0 ? 1 : (dc < 0 ? -1 : 0);
    const long adr = dr < 0 ? -dr : dr;
    const long adc = dc < 0 ? -dc : dc;
    Cell cur = a;
    if (!visit(cur)) return false;
    long k = 0;  // column boundaries crossed
    long j = 0;  // row boundaries crossed
    while (k < adc || j < adr) {
        if (j == adr) {
            cur.col += sc;
            ++k;
        } else if (k == adc) {
            cur.row += sr;
            ++j;
        } else {
            const long col_t = (2 * k + 1) * adr;
            const long row_t = (2 * j + 1) * adc;
            if (col_t < row_t) {
                cur.col += sc;
                ++k;
            } else if (row_t < col_t) {
                cur.row += sr;
                ++j;
            } else {
                if (!corner(Cell{cur.row, cur.col + sc}, Cell{cur.row + sr, cur.col})) return false;
                cur.row += sr;
                cur.col += sc;
                ++k;
                ++j;
            }
        }
        if (!visit(cur)) return false;
    }
    return true;
}

/// True iff the center-to-center segment crosses no blocked cell and does not
/// squeeze through a corner shared by two blocked cells.
inline bool line_of_sight(const GridMap& grid, Cell a, Cell b) {
    return walk_segment(
        a, b, [&](Cell c) { return grid.free(c); },
        [&](Cell s1, Cell s2) { return grid.free(s1) || grid.free(s2); });
}

struct AnyAnglePath {
    std::vector<Cell> waypoints;
    double cost = 0.0;
};

inline double polyline_length(const std::vector<Cell>& waypoints) {
    double total = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) total += euclidean(waypoints[i - 1], waypoints[i]);
    return total;
}

/// Drop interior waypoints that continue straight on in the same direction.
inline std::vector<Cell> collapse_collinear(const std::vector<Cell>& pts) {
    std::vector<Cell> out;
    for (const Cell& p : pts) {
        if (!out.empty() && out.back() == p) continue;
        while (out.size() >= 2) {
            const Cell& a = out[out.size() - 2];
            const Cell& b = out.back();
            const long ux = b.row - a.row, uy = b.col - a.col;
            const long vx = p.row - b.row, vy = p.col - b.col;
            if (ux * vy - uy * vx == 0 && ux * vx + uy * vy > 0) out.pop_back();
            else break;
        }
        out.push_back(p);
    }
    return out;
}

/// Basic Theta*: A* over grid cells with Euclidean costs, where a successor
/// inherits the expanded node's parent whenever that parent can see it.
inline AnyAnglePath theta_star(const PTask& task, MovePolicy policy = {}) {
    const GridMap& grid = task.grid;
    if (!grid.free(task.start) || !grid.free(task.goal)) throw ContractViolation("start and goal must be free");
    const std::size_t n = grid.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> g(n, inf);
    std::vector<std::uint32_t> parent(n, detail::kNoParent);
    std::vector<std::uint8_t> closed(n, 0);

    struct Item {
        double f;
        double g;
        std::uint32_t idx;
        bool operator>(const Item& o) const {
            if (f != o.f) return f > o.f;
            if (g != o.g) return g < o.g;
            return idx > o.idx;
        }
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;

    const auto s = static_cast<std::uint32_t>(grid.index(task.start));
    const auto goal = static_cast<std::uint32_t>(grid.index(task.goal));
    g[s] = 0.0;
    parent[s] = s;
    open.push({euclidean(task.start, task.goal), 0.0, s});

    while (!open.empty()) {
        const Item top = open.top();
        open.pop();
        if (closed[top.idx] || top.g != g[top.idx]) continue;
        closed[top.idx] = 1;
        if (top.idx == goal) break;
        const Cell cur = grid.cell_at(top.idx);
        const std::uint32_t par = parent[top.idx];
        const Cell par_cell = grid.cell_at(par);
        for (const auto& nb : neighbors(grid, cur, policy)) {
            const auto next = static_cast<std::uint32_t>(grid.index(nb.cell));
            if (closed[next]) continue;
            double cand;
            std::uint32_t via;
            if (line_of_sight(grid, par_cell, nb.cell)) {
                cand = g[par] + euclidean(par_cell, nb.cell);
                via = par;
            } else {
                cand = g[top.idx] + euclidean(cur, nb.cell);
                via = top.idx;
            }
            if (cand < g[next]) {
                g[next] = cand;
                parent[next] = via;
                open.push({cand + euclidean(nb.cell, task.goal), cand, next});
            }
        }
    }
    if (!closed[goal]) throw NoPathError("theta*: goal unreachable");

    std::vector<Cell> rev;
    for (std::uint32_t cur = goal;; cur = parent[cur]) {
        rev.push_back(grid.cell_at(cur));
        if (cur == s) break;
    }
    AnyAnglePath path;
    path.waypoints = collapse_collinear({rev.rbegin(), rev.rend()});
    path.cost = polyline_length(path.waypoints);
    return path;
}

/// Cells crossed by the path's segments (waypoints included), row-major
/// sorted and unique.
inline std::vector<Cell> rasterize(const AnyAnglePath& path) {
    std::vector<Cell> cells;
    if (path.waypoints.size() == 1) cells.push_back(path.waypoints.front());
    for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
        walk_segment(
            path.waypoints[i - 1], path.waypoints[i],
            [&](Cell c) {
                cells.push_back(c);
                return true;
            },
            [](Cell, Cell) { return true; });
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

/// Numerator of the path-probability ratio.
enum class PpmNumerator : std::uint8_t { GridOptimal, ThetaCost };

/// Path-probability map. A cell n reachable from both ends scores
/// r = C / (d_start(n) + d_goal(n)); scores below the cut become 0 and every
/// cell on the rasterized any-angle path is forced to 1.
inline HeuristicMap build_ppm(const PTask& task, const DistanceMap& d_start, const DistanceMap& d_goal,
                              const std::vector<Cell>& theta_cells,
                              PpmNumerator numerator = PpmNumerator::GridOptimal,
                              std::optional<double> theta_cost = std::nullopt) {
    const GridMap& grid = task.grid;
    const auto same_dims = [&](const DistanceMap& d) {
        return d.height() == grid.height() && d.width() == grid.width();
    };
    if (!same_dims(d_start) || !same_dims(d_goal)) throw ContractViolation("distance map dimensions differ from grid");
    if (d_start.source() != task.start || d_goal.source() != task.goal) {
        throw ContractViolation("distance map sources do not match the task");
    }
    const auto optimal = d_start.at(task.goal);
    if (!optimal) throw ContractViolation("build_ppm needs a solvable task");
    if (numerator == PpmNumerator::ThetaCost && !theta_cost) {
        throw ContractViolation("theta-cost numerator requires the any-angle path cost");
    }
    const double c = numerator == PpmNumerator::GridOptimal ? optimal->to_float() : *theta_cost;
    const float cut = [] {
        float f = static_cast<float>(kPathProbabilityCut);
        return static_cast<double>(f) < kPathProbabilityCut ? std::nextafter(f, 2.0f) : f;
    }();

    std::vector<float> values(grid.size(), 0.0f);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Cell cell = grid.cell_at(i);
        if (grid.blocked(cell)) continue;
        const auto ds = d_start.at(cell);
        const auto dg = d_goal.at(cell);
        if (!ds || !dg) continue;
        const ExactCost through = *ds + *dg;
        double r;
        if (numerator == PpmNumerator::GridOptimal && through == *optimal) r = 1.0;
        else if (through.is_zero()) r = 1.0;
        else r = c / through.to_float();
        if (r >= kPathProbabilityCut) values[i] = std::max(cut, static_cast<float>(std::min(r, 1.0)));
    }
    for (const Cell& cell : theta_cells) {
        if (!grid.in_bounds(cell)) throw ContractViolation("any-angle path cell out of bounds");
        values[grid.index(cell)] = 1.0f;
    }
    return {HeuristicKind::PP, grid.height(), grid.width(), std::move(values)};
}

/// Full ground-truth PPM for one task: two distance maps, Theta*, rasterize.
inline HeuristicMap oracle_ppm(const PTask& task, MovePolicy policy = {},
                               PpmNumerator numerator = PpmNumerator::GridOptimal) {
    const DistanceMap d_start = dijkstra_map(task.grid, task.start, policy);
    const DistanceMap d_goal = dijkstra_map(task.grid, task.goal, policy);
    const AnyAnglePath theta = theta_star(task, policy);
    return build_ppm(task, d_start, d_goal, rasterize(theta), numerator, theta.cost);
}

}  // namespace gridpath
