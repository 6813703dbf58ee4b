#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gridpath/cost.hpp"
#include "gridpath/error.hpp"
#include "gridpath/grid.hpp"
#include "gridpath/heuristics.hpp"
#include "gridpath/oracle.hpp"

namespace gridpath {

// Procedural stand-ins for the motion-planning tile maps; none of these
// reproduce the original pixel content.
enum class ObstacleStyle : std::uint8_t { RandomRects, RandomScatter, Maze };

inline std::string_view to_string(ObstacleStyle s) {
    switch (s) {
        case ObstacleStyle::RandomRects: return "rects";
        case ObstacleStyle::RandomScatter: return "scatter";
        case ObstacleStyle::Maze: return "maze";
    }
    return "?";
}

inline std::optional<ObstacleStyle> parse_obstacle_style(std::string_view s) {
    if (s == "rects") return ObstacleStyle::RandomRects;
    if (s == "scatter") return ObstacleStyle::RandomScatter;
    if (s == "maze") return ObstacleStyle::Maze;
    return std::nullopt;
}

struct MapGenConfig {
    int tile_size = 32;
    int tiles_per_side = 2;
    ObstacleStyle obstacle_style = ObstacleStyle::RandomRects;
    double density = 0.3;
    std::uint64_t seed = 0;

    void validate() const {
        if (tile_size < 2) throw ContractViolation("tile size must be at least 2");
        if (tiles_per_side < 1) throw ContractViolation("tiles per side must be positive");
        if (!(density >= 0.0 && density < 1.0)) throw ContractViolation("density must lie in [0, 1)");
    }
};

namespace detail {

using Tile = std::vector<std::uint8_t>;  // row-major, tile_size^2

inline Tile rect_tile(int size, double density, std::mt19937_64& rng) {
    Tile tile(static_cast<std::size_t>(size) * size, 0);
    const double target = density * size * size;
    const int max_side = std::max(2, size / 4);
    std::uniform_int_distribution<int> side(2, max_side);
    double placed = 0.0;
    while (placed < target) {
        const int h = std::min(side(rng), size);
        const int w = std::min(side(rng), size);
        const int r0 = std::uniform_int_distribution<int>(0, size - h)(rng);
        const int c0 = std::uniform_int_distribution<int>(0, size - w)(rng);
        for (int r = r0; r < r0 + h; ++r)
            for (int c = c0; c < c0 + w; ++c) tile[static_cast<std::size_t>(r) * size + c] = 1;
        placed += static_cast<double>(h) * w;
    }
    return tile;
}

inline Tile scatter_tile(int size, double density, std::mt19937_64& rng) {
    Tile tile(static_cast<std::size_t>(size) * size, 0);
    std::bernoulli_distribution coin(density);
    for (auto& cell : tile) cell = coin(rng) ? 1 : 0;
    return tile;
}

// Depth-first maze: passages on even coordinates, walls in between. Each
// remaining wall cell survives with probability `density`.
inline Tile maze_tile(int size, double density, std::mt19937_64& rng) {
    Tile tile(static_cast<std::size_t>(size) * size, 1);
    const int rooms = (size + 1) / 2;
    auto at = [&](int r, int c) -> std::uint8_t& { return tile[static_cast<std::size_t>(r) * size + c]; };
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(rooms) * rooms, 0);
    std::vector<std::pair<int, int>> stack{{0, 0}};
    visited[0] = 1;
    at(0, 0) = 0;
    constexpr std::array<std::array<int, 2>, 4> steps{{{-1, 0}, {0, 1}, {1, 0}, {0, -1}}};
    while (!stack.empty()) {
        const auto [r, c] = stack.back();
        std::array<int, 4> options{};
        int n = 0;
        for (int d = 0; d < 4; ++d) {
            const int nr = r + steps[d][0], nc = c + steps[d][1];
            if (nr >= 0 && nr < rooms && nc >= 0 && nc < rooms && !visited[static_cast<std::size_t>(nr) * rooms + nc])
                options[n++] = d;
        }
        if (n == 0) {
            stack.pop_back();
            continue;
        }
        const int d = options[std::uniform_int_distribution<int>(0, n - 1)(rng)];
        const int nr = r + steps[d][0], nc = c + steps[d][1];
        visited[static_cast<std::size_t>(nr) * rooms + nc] = 1;
        at(2 * r + steps[d][0], 2 * c + steps[d][1]) = 0;
        at(2 * nr, 2 * nc) = 0;
        stack.emplace_back(nr, nc);
    }
    std::bernoulli_distribution keep(density);
    for (auto& cell : tile)
        if (cell && !keep(rng)) cell = 0;
    return tile;
}

}  // namespace detail

/// Compose tiles_per_side^2 independently generated tiles into one map.
/// Deterministic in (config, seed).
inline GridMap generate_map(const MapGenConfig& config) {
    config.validate();
    const int s = config.tile_size;
    const int side = s * config.tiles_per_side;
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(side) * side, 0);
    for (int q = 0; q < config.tiles_per_side * config.tiles_per_side; ++q) {
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(config.obstacle_style)};
        std::mt19937_64 rng(seq);
        detail::Tile tile;
        if (config.density <= 0.0) {
            tile.assign(static_cast<std::size_t>(s) * s, 0);
        } else {
            switch (config.obstacle_style) {
                case ObstacleStyle::RandomRects: tile = detail::rect_tile(s, config.density, rng); break;
                case ObstacleStyle::RandomScatter: tile = detail::scatter_tile(s, config.density, rng); break;
                case ObstacleStyle::Maze: tile = detail::maze_tile(s, config.density, rng); break;
            }
        }
        const int r0 = (q / config.tiles_per_side) * s;
        const int c0 = (q % config.tiles_per_side) * s;
        for (int r = 0; r < s; ++r)
            for (int c = 0; c < s; ++c)
                cells[static_cast<std::size_t>(r0 + r) * side + (c0 + c)] = tile[static_cast<std::size_t>(r) * s + c];
    }
    return GridMap(side, side, std::move(cells));
}

/// Dihedral transform id in [0, 8): mirror columns when id >= 4, then rotate
/// clockwise by 90 * (id % 4) degrees.
using DihedralTransform = int;

inline DihedralTransform inverse_transform(DihedralTransform t) { return t < 4 ? (4 - t) % 4 : t; }

/// Where cell (r, c) of a size x size square lands under transform `t`.
inline Cell transform_cell(Cell cell, int size, DihedralTransform t) {
    if (t >= 4) cell.col = size - 1 - cell.col;
    for (int i = 0; i < t % 4; ++i) cell = {cell.col, size - 1 - cell.row};
    return cell;
}

/// Apply `t` to a square grid.
inline GridMap transform_square(const GridMap& grid, DihedralTransform t) {
    if (grid.height() != grid.width()) throw DimensionError("dihedral transforms need a square tile");
    const int s = grid.height();
    std::vector<std::uint8_t> out(grid.size(), 0);
    for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c) {
            const Cell d = transform_cell({r, c}, s, t);
            out[static_cast<std::size_t>(d.row) * s + d.col] = grid.blocked({r, c});
        }
    return GridMap(s, s, std::move(out));
}

/// Per-quadrant transforms for each of the 16 augmented variants (quadrants
/// in row-major order: NW, NE, SW, SE). Variant 0 is the identity.
inline constexpr std::array<std::array<DihedralTransform, 4>, 16> kAugmentSchedule{{
    {0, 0, 0, 0}, {1, 1, 1, 1}, {2, 2, 2, 2}, {3, 3, 3, 3},
    {4, 4, 4, 4}, {5, 5, 5, 5}, {6, 6, 6, 6}, {7, 7, 7, 7},
    {0, 1, 2, 3}, {1, 2, 3, 4}, {2, 3, 4, 5}, {3, 4, 5, 6},
    {4, 5, 6, 7}, {5, 6, 7, 0}, {6, 7, 0, 1}, {7, 0, 1, 2},
}};

inline GridMap quadrant(const GridMap& grid, int q) {
    const int qh = grid.height() / 2, qw = grid.width() / 2;
    const int r0 = (q / 2) * qh, c0 = (q % 2) * qw;
    std::vector<std::uint8_t> cells;
    cells.reserve(static_cast<std::size_t>(qh) * qw);
    for (int r = 0; r < qh; ++r)
        for (int c = 0; c < qw; ++c) cells.push_back(grid.blocked({r0 + r, c0 + c}));
    return GridMap(qh, qw, std::move(cells));
}

/// The 16 augmented variants of a four-quadrant map.
inline std::vector<GridMap> augment(const GridMap& grid) {
    if (grid.height() % 2 != 0 || grid.width() % 2 != 0) throw DimensionError("map is not quadrant-divisible");
    if (grid.height() != grid.width()) throw DimensionError("augmentation rotates quadrants; map must be square");
    const int half = grid.height() / 2;
    std::array<GridMap, 4> parts{quadrant(grid, 0), quadrant(grid, 1), quadrant(grid, 2), quadrant(grid, 3)};
    std::vector<GridMap> variants;
    variants.reserve(kAugmentSchedule.size());
    for (const auto& schedule : kAugmentSchedule) {
        std::vector<std::uint8_t> cells(grid.size(), 0);
        for (int q = 0; q < 4; ++q) {
            const GridMap t = transform_square(parts[q], schedule[q]);
            const int r0 = (q / 2) * half, c0 = (q % 2) * half;
            for (int r = 0; r < half; ++r)
                for (int c = 0; c < half; ++c)
                    cells[static_cast<std::size_t>(r0 + r) * grid.width() + c0 + c] = t.blocked({r, c});
        }
        variants.emplace_back(grid.height(), grid.width(), std::move(cells));
    }
    return variants;
}

enum class Split : std::uint8_t { Train, Val, Test };

inline std::string_view to_string(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        case Split::Test: return "test";
    }
    return "?";
}

inline std::optional<Split> parse_split(std::string_view s) {
    if (s == "train") return Split::Train;
    if (s == "val") return Split::Val;
    if (s == "test") return Split::Test;
    return std::nullopt;
}

struct InstanceRecord {
    std::string id;
    std::string map_id;
    std::string base_map_id;  // identity before augmentation
    Cell start;
    Cell goal;
    ExactCost optimal_cost;
    double hardness = 1.0;
    Split split = Split::Train;

    friend bool operator==(const InstanceRecord&, const InstanceRecord&) = default;
};

/// Optimal cost over octile distance; 1.0 for the trivial start == goal case.
inline double hardness(ExactCost optimal, Cell start, Cell goal) {
    const double h = octile(start, goal).to_float();
    return h > 0.0 ? optimal.to_float() / h : 1.0;
}

/// Goal uniform over free cells; start uniform over the farthest third of
/// the cells reachable from it (rounded up, goal excluded, ties row-major).
inline std::optional<InstanceRecord> sample_instance(const GridMap& grid, std::uint64_t seed, MovePolicy policy = {}) {
    std::vector<std::uint32_t> free_cells;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!grid.cells()[i]) free_cells.push_back(static_cast<std::uint32_t>(i));
    if (free_cells.empty()) return std::nullopt;

    std::mt19937_64 rng(seed);
    const Cell goal = grid.cell_at(
        free_cells[std::uniform_int_distribution<std::size_t>(0, free_cells.size() - 1)(rng)]);
    const DistanceMap dist = dijkstra_map(grid, goal, policy);

    std::vector<std::pair<ExactCost, std::uint32_t>> candidates;
    for (std::uint32_t idx : free_cells) {
        const Cell c = grid.cell_at(idx);
        if (c == goal) continue;
        if (auto d = dist.at(c)) candidates.emplace_back(*d, idx);
    }
    if (candidates.empty()) return std::nullopt;
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return b.first < a.first;
        return a.second < b.second;
    });
    const std::size_t keep = (candidates.size() + 2) / 3;
    const auto& pick = candidates[std::uniform_int_distribution<std::size_t>(0, keep - 1)(rng)];

    InstanceRecord rec;
    rec.start = grid.cell_at(pick.second);
    rec.goal = goal;
    rec.optimal_cost = pick.first;
    rec.hardness = hardness(rec.optimal_cost, rec.start, rec.goal);
    return rec;
}

inline constexpr double kDefaultMinHardness = 1.05;

inline std::vector<InstanceRecord> filter_hardness(std::vector<InstanceRecord> records,
                                                   double min_hardness = kDefaultMinHardness) {
    std::erase_if(records, [&](const InstanceRecord& r) { return !(r.hardness >= min_hardness); });
    return records;
}

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

inline constexpr std::uint64_t kDefaultSplitSeed = 0x5eed;

/// 8:1:1 split keyed on the base map, so every augmentation of a map lands in
/// the same subset.
inline Split split_for(std::string_view base_map_id, std::uint64_t seed = kDefaultSplitSeed) {
    const std::uint64_t h = detail::splitmix64(detail::fnv1a(base_map_id) ^ detail::splitmix64(seed));
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    if (u < 0.8) return Split::Train;
    if (u < 0.9) return Split::Val;
    return Split::Test;
}

struct DatasetSplits {
    std::vector<InstanceRecord> train;
    std::vector<InstanceRecord> val;
    std::vector<InstanceRecord> test;
};

inline DatasetSplits split(std::vector<InstanceRecord> records, std::uint64_t seed = kDefaultSplitSeed) {
    DatasetSplits out;
    for (auto& r : records) {
        r.split = split_for(r.base_map_id, seed);
        switch (r.split) {
            case Split::Train: out.train.push_back(std::move(r)); break;
            case Split::Val: out.val.push_back(std::move(r)); break;
            case Split::Test: out.test.push_back(std::move(r)); break;
        }
    }
    return out;
}

}  // namespace gridpath
