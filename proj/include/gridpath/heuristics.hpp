#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridpath/cost.hpp"
#include "gridpath/error.hpp"
#include "gridpath/grid.hpp"

namespace gridpath {

/// Octile distance; the exact shortest-path cost on an obstacle-free grid.
inline ExactCost octile(Cell a, Cell b) {
    const auto dx = static_cast<std::uint32_t>(std::abs(a.row - b.row));
    const auto dy = static_cast<std::uint32_t>(std::abs(a.col - b.col));
    const auto lo = std::min(dx, dy);
    const auto hi = std::max(dx, dy);
    return {hi - lo, lo};
}

inline double chebyshev(Cell a, Cell b) {
    return static_cast<double>(std::max(std::abs(a.row - b.row), std::abs(a.col - b.col)));
}

inline double euclidean(Cell a, Cell b) {
    return std::hypot(static_cast<double>(a.row - b.row), static_cast<double>(a.col - b.col));
}

enum class HeuristicKind : std::uint8_t { CF = 0, PP = 1, ABS = 2 };

inline std::string_view to_string(HeuristicKind k) {
    switch (k) {
        case HeuristicKind::CF: return "cf";
        case HeuristicKind::PP: return "pp";
        case HeuristicKind::ABS: return "abs";
    }
    return "?";
}

inline std::optional<HeuristicKind> parse_heuristic_kind(std::string_view s) {
    if (s == "cf") return HeuristicKind::CF;
    if (s == "pp" || s == "ppm") return HeuristicKind::PP;
    if (s == "abs" || s == "hstar") return HeuristicKind::ABS;
    return std::nullopt;
}

/// Lower edge of the nonzero path-probability range.
inline constexpr double kPathProbabilityCut = 0.95;

/// Marks a cell with no usable cost-to-go (unreachable, or cf ~ 0).
inline constexpr double kUnreachableSentinel = 1e12;

/// Per-cell scalar field that rides along a GridMap. Values are single
/// precision to match the on-disk exchange format.
class HeuristicMap {
public:
    HeuristicMap(HeuristicKind kind, int height, int width, std::vector<float> values)
        : kind_(kind), height_(height), width_(width), values_(std::move(values)) {
        if (height < 1 || width < 1) throw DimensionError("heuristic map dimensions must be positive");
        if (values_.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
            throw DimensionError("heuristic map value count does not match dimensions");
        }
    }

    static HeuristicMap filled(HeuristicKind kind, int height, int width, float value) {
        return {kind, height, width, std::vector<float>(static_cast<std::size_t>(height) * width, value)};
    }

    HeuristicKind kind() const { return kind_; }
    int height() const { return height_; }
    int width() const { return width_; }
    const std::vector<float>& values() const { return values_; }

    bool matches(const GridMap& grid) const { return grid.height() == height_ && grid.width() == width_; }

    double lookup(Cell c) const {
        if (c.row < 0 || c.row >= height_ || c.col < 0 || c.col >= width_) {
            throw ContractViolation("heuristic map lookup out of bounds");
        }
        return values_[static_cast<std::size_t>(c.row) * width_ + c.col];
    }

    double lookup(Cell c, HeuristicKind expected) const {
        require(expected);
        return lookup(c);
    }

    // Unchecked, for the search inner loop.
    float at(std::size_t idx) const { return values_[idx]; }

    void require(HeuristicKind expected) const {
        if (kind_ != expected) {
            throw KindMismatch("expected a " + std::string(to_string(expected)) + " map, got " +
                               std::string(to_string(kind_)));
        }
    }

    friend bool operator==(const HeuristicMap&, const HeuristicMap&) = default;

private:
    HeuristicKind kind_;
    int height_;
    int width_;
    std::vector<float> values_;
};

}  // namespace gridpath
