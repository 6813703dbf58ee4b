#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gridpath/cost.hpp"
#include "gridpath/error.hpp"

namespace gridpath {

struct Cell {
    int row = 0;
    int col = 0;

    friend constexpr bool operator==(const Cell&, const Cell&) = default;
    // row-major order
    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Cell& c) {
        return os << '(' << c.row << ',' << c.col << ')';
    }
};

enum class CornerRule : std::uint8_t { Permissive, NoCornerCutting };

/// Movement rule. Permissive allows a diagonal step whenever the target cell
/// is free; NoCornerCutting also requires both shared cardinal cells free.
struct MovePolicy {
    CornerRule corner_rule = CornerRule::Permissive;

    static constexpr MovePolicy permissive() { return {CornerRule::Permissive}; }
    static constexpr MovePolicy no_corner_cutting() { return {CornerRule::NoCornerCutting}; }
    friend constexpr bool operator==(const MovePolicy&, const MovePolicy&) = default;
};

enum class MoveKind : std::uint8_t { Cardinal, Diagonal };

inline ExactCost move_cost(MoveKind kind) {
    return kind == MoveKind::Cardinal ? ExactCost::cardinal() : ExactCost::diagonal();
}

struct Neighbor {
    Cell cell;
    MoveKind kind;
    friend constexpr bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// At most eight neighbors; stored inline.
class NeighborList {
public:
    void push(Neighbor n) { items_[size_++] = n; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    const Neighbor* begin() const { return items_.data(); }
    const Neighbor* end() const { return items_.data() + size_; }
    const Neighbor& operator[](std::size_t i) const { return items_[i]; }

private:
    std::array<Neighbor, 8> items_{};
    std::size_t size_ = 0;
};

/// Immutable occupancy grid, row-major.
class GridMap {
public:
    GridMap(int height, int width, std::vector<std::uint8_t> blocked)
        : height_(height), width_(width), blocked_(std::move(blocked)) {
        if (height < 1 || width < 1) throw DimensionError("grid dimensions must be positive");
        if (blocked_.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
            throw DimensionError("cell array does not match grid dimensions");
        }
        for (auto& b : blocked_) b = b ? 1 : 0;
    }

    static GridMap empty(int height, int width) {
        return GridMap(height, width, std::vector<std::uint8_t>(static_cast<std::size_t>(height) * width, 0));
    }

    /// Build from rows of '.' (free) and '#' (blocked); handy in tests.
    static GridMap from_rows(const std::vector<std::string>& rows) {
        if (rows.empty()) throw DimensionError("no rows");
        const int h = static_cast<int>(rows.size());
        const int w = static_cast<int>(rows.front().size());
        std::vector<std::uint8_t> cells;
        cells.reserve(static_cast<std::size_t>(h) * w);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != w) throw DimensionError("ragged rows");
            for (char ch : r) cells.push_back(ch == '#' || ch == '@' ? 1 : 0);
        }
        return GridMap(h, w, std::move(cells));
    }

    int height() const { return height_; }
    int width() const { return width_; }
    std::size_t size() const { return blocked_.size(); }

    bool in_bounds(Cell c) const { return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_; }
    std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row) * width_ + c.col; }
    Cell cell_at(std::size_t idx) const {
        return {static_cast<int>(idx / width_), static_cast<int>(idx % width_)};
    }

    bool blocked(Cell c) const { return blocked_[index(c)] != 0; }
    bool free(Cell c) const { return in_bounds(c) && blocked_[index(c)] == 0; }

    std::size_t free_count() const {
        return static_cast<std::size_t>(std::count(blocked_.begin(), blocked_.end(), 0));
    }
    std::size_t blocked_count() const { return size() - free_count(); }

    const std::vector<std::uint8_t>& cells() const { return blocked_; }

    friend bool operator==(const GridMap&, const GridMap&) = default;

private:
    int height_;
    int width_;
    std::vector<std::uint8_t> blocked_;
};

// Clockwise from north.
inline constexpr std::array<std::array<int, 2>, 8> kDirections{{
    {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1},
}};

inline NeighborList neighbors(const GridMap& grid, Cell cell, MovePolicy policy = {}) {
    assert(grid.free(cell));
    NeighborList out;
    for (const auto& d : kDirections) {
        const Cell n{cell.row + d[0], cell.col + d[1]};
        if (!grid.free(n)) continue;
        const bool diagonal = d[0] != 0 && d[1] != 0;
        if (diagonal && policy.corner_rule == CornerRule::NoCornerCutting) {
            if (!grid.free({cell.row + d[0], cell.col}) || !grid.free({cell.row, cell.col + d[1]})) continue;
        }
        out.push({n, diagonal ? MoveKind::Diagonal : MoveKind::Cardinal});
    }
    return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

inline int parse_dimension(std::string_view text, std::size_t line) {
    int value = 0;
    if (text.empty()) throw ParseError(line, "missing dimension");
    for (char ch : text) {
        if (ch < '0' || ch > '9') throw ParseError(line, "bad dimension '" + std::string(text) + "'");
        value = value * 10 + (ch - '0');
        if (value > (1 << 20)) throw ParseError(line, "dimension too large");
    }
    if (value < 1) throw ParseError(line, "dimension must be positive");
    return value;
}

}  // namespace detail

/// Parse MovingAI `.map` text. `.` and `G` are free; `@ O T W S` are blocked.
inline GridMap load_movingai(std::istream& in) {
    std::string raw;
    std::size_t line = 0;
    int height = -1;
    int width = -1;
    bool saw_type = false;

    auto next_line = [&](std::string_view& out) {
        if (!std::getline(in, raw)) return false;
        ++line;
        out = detail::trim(raw);
        return true;
    };

    std::string_view text;
    while (true) {
        if (!next_line(text)) throw ParseError(line, "unexpected end of header");
        if (text.empty()) continue;
        const auto space = text.find_first_of(" \t");
        const auto key = text.substr(0, space);
        const auto value = space == std::string_view::npos ? std::string_view{} : detail::trim(text.substr(space + 1));
        if (key == "type") {
            if (value != "octile") throw ParseError(line, "unsupported map type '" + std::string(value) + "'");
            saw_type = true;
        } else if (key == "height") {
            height = detail::parse_dimension(value, line);
        } else if (key == "width") {
            width = detail::parse_dimension(value, line);
        } else if (key == "map" && value.empty()) {
            break;
        } else {
            throw ParseError(line, "unexpected header line '" + std::string(text) + "'");
        }
    }
    if (!saw_type) throw ParseError(line, "missing 'type' header");
    if (height < 0 || width < 0) throw ParseError(line, "missing height or width");

    std::vector<std::uint8_t> cells;
    cells.reserve(static_cast<std::size_t>(height) * width);
    int rows = 0;
    while (next_line(text)) {
        if (text.empty()) continue;
        if (rows == height) throw ParseError(line, "more map rows than declared height " + std::to_string(height));
        if (static_cast<int>(text.size()) != width) {
            throw ParseError(line, "row has " + std::to_string(text.size()) + " cells, expected " + std::to_string(width));
        }
        for (char ch : text) {
            switch (ch) {
                case '.':
                case 'G': cells.push_back(0); break;
                case '@':
                case 'O':
                case 'T':
                case 'W':
                case 'S': cells.push_back(1); break;
                default: throw ParseError(line, std::string("unknown map symbol '") + ch + "'");
            }
        }
        ++rows;
    }
    if (rows != height) {
        throw ParseError(line, "map has " + std::to_string(rows) + " rows, expected " + std::to_string(height));
    }
    return GridMap(height, width, std::move(cells));
}

inline void write_movingai(std::ostream& out, const GridMap& grid) {
    out << "type octile\nheight " << grid.height() << "\nwidth " << grid.width() << "\nmap\n";
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) out << (grid.blocked({r, c}) ? '@' : '.');
        out << '\n';
    }
}

/// Internal text format: `H W`, then H rows of `.` / `#`.
inline GridMap load_grid_text(std::istream& in) {
    std::string raw;
    std::size_t line = 0;
    std::string_view text;
    do {
        if (!std::getline(in, raw)) throw ParseError(line, "missing dimension line");
        ++line;
        text = detail::trim(raw);
    } while (text.empty());
    const auto space = text.find_first_of(" \t");
    if (space == std::string_view::npos) throw ParseError(line, "expected 'H W'");
    const int height = detail::parse_dimension(text.substr(0, space), line);
    const int width = detail::parse_dimension(detail::trim(text.substr(space + 1)), line);

    std::vector<std::uint8_t> cells;
    cells.reserve(static_cast<std::size_t>(height) * width);
    int rows = 0;
    while (std::getline(in, raw)) {
        ++line;
        text = detail::trim(raw);
        if (text.empty()) continue;
        if (rows == height) throw ParseError(line, "more rows than declared height");
        if (static_cast<int>(text.size()) != width) throw ParseError(line, "row width mismatch");
        for (char ch : text) {
            if (ch == '.') cells.push_back(0);
            else if (ch == '#') cells.push_back(1);
            else throw ParseError(line, std::string("unknown symbol '") + ch + "'");
        }
        ++rows;
    }
    if (rows != height) throw ParseError(line, "row count mismatch");
    return GridMap(height, width, std::move(cells));
}

inline void write_grid_text(std::ostream& out, const GridMap& grid) {
    out << grid.height() << ' ' << grid.width() << '\n';
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) out << (grid.blocked({r, c}) ? '#' : '.');
        out << '\n';
    }
}

/// Load either format; MovingAI files are recognised by their `type` header.
inline GridMap load_map_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open map file " + path.string());
    std::string first;
    while (std::getline(in, first) && detail::trim(first).empty()) {}
    in.clear();
    in.seekg(0);
    if (detail::trim(first).starts_with("type")) return load_movingai(in);
    return load_grid_text(in);
}

/// Block-wise resampling. An output cell is blocked iff at least half of the
/// source cells in its block are blocked.
inline GridMap rescale(const GridMap& grid, int target_h, int target_w) {
    if (target_h < 1 || target_w < 1) throw DimensionError("rescale target must be positive");
    const auto span = [](int i, int src, int dst) {
        const long lo = static_cast<long>(i) * src / dst;
        const long hi = std::max(lo + 1, static_cast<long>(i + 1) * src / dst);
        return std::pair<int, int>{static_cast<int>(lo), static_cast<int>(hi)};
    };
    std::vector<std::uint8_t> out(static_cast<std::size_t>(target_h) * target_w);
    for (int i = 0; i < target_h; ++i) {
        const auto [r0, r1] = span(i, grid.height(), target_h);
        for (int j = 0; j < target_w; ++j) {
            const auto [c0, c1] = span(j, grid.width(), target_w);
            long blocked = 0;
            for (int r = r0; r < r1; ++r)
                for (int c = c0; c < c1; ++c) blocked += grid.blocked({r, c});
            const long total = static_cast<long>(r1 - r0) * (c1 - c0);
            out[static_cast<std::size_t>(i) * target_w + j] = 2 * blocked >= total ? 1 : 0;
        }
    }
    return GridMap(target_h, target_w, std::move(out));
}

}  // namespace gridpath
