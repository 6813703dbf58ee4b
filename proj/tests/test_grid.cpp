#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "gridpath/grid.hpp"
#include "oracles.hpp"

using namespace gridpath;

namespace {

std::vector<Neighbor> as_vector(const NeighborList& l) { return {l.begin(), l.end()}; }

}  // namespace

TEST(Neighbors, FullNeighborhoodClockwiseFromNorth) {
    const auto g = GridMap::empty(3, 3);
    const auto n = as_vector(neighbors(g, {1, 1}));
    ASSERT_EQ(n.size(), 8u);
    EXPECT_EQ(n[0], (Neighbor{{0, 1}, MoveKind::Cardinal}));
    EXPECT_EQ(n[1], (Neighbor{{0, 2}, MoveKind::Diagonal}));
    EXPECT_EQ(n[2], (Neighbor{{1, 2}, MoveKind::Cardinal}));
    EXPECT_EQ(n[7], (Neighbor{{0, 0}, MoveKind::Diagonal}));
    EXPECT_EQ(std::count_if(n.begin(), n.end(), [](auto& x) { return x.kind == MoveKind::Diagonal; }), 4);
}

TEST(Neighbors, BlockedDiagonalTarget) {
    const auto g = GridMap::from_rows({"...", ".#.", "..."});
    const auto n = as_vector(neighbors(g, {0, 0}));
    ASSERT_EQ(n.size(), 2u);
    EXPECT_EQ(n[0], (Neighbor{{0, 1}, MoveKind::Cardinal}));
    EXPECT_EQ(n[1], (Neighbor{{1, 0}, MoveKind::Cardinal}));
}

TEST(Neighbors, CornerCuttingDiscriminator) {
    const auto g = GridMap::from_rows({".#.", "#..", "..."});
    const auto perm = as_vector(neighbors(g, {0, 0}, MovePolicy::permissive()));
    ASSERT_EQ(perm.size(), 1u);
    EXPECT_EQ(perm[0], (Neighbor{{1, 1}, MoveKind::Diagonal}));
    EXPECT_TRUE(neighbors(g, {0, 0}, MovePolicy::no_corner_cutting()).empty());
}

TEST(Neighbors, PropertiesOnRandomGrids) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = oracle::random_grid(rng, 1 + trial % 9, 1 + (trial * 7) % 11, 0.35);
        for (const Cell c : oracle::free_cells(g)) {
            const auto perm = as_vector(neighbors(g, c, MovePolicy::permissive()));
            const auto strict = as_vector(neighbors(g, c, MovePolicy::no_corner_cutting()));
            for (const auto& n : perm) {
                ASSERT_TRUE(g.free(n.cell));
                ASSERT_EQ(std::max(std::abs(n.cell.row - c.row), std::abs(n.cell.col - c.col)), 1);
            }
            for (const auto& n : strict) {
                ASSERT_TRUE(g.free(n.cell));
                ASSERT_NE(std::find(perm.begin(), perm.end(), n), perm.end());
            }
        }
    }
}

TEST(MovingAi, LoadsSmallMap) {
    std::istringstream in("type octile\nheight 2\nwidth 2\nmap\n..\n.@\n");
    const auto g = load_movingai(in);
    EXPECT_EQ(g.height(), 2);
    EXPECT_EQ(g.width(), 2);
    EXPECT_EQ(g.blocked_count(), 1u);
    EXPECT_TRUE(g.blocked({1, 1}));
}

TEST(MovingAi, SymbolTable) {
    std::istringstream in("type octile\r\nheight 1\r\nwidth 7\r\nmap\r\n.GT@OWS\r\n");
    const auto g = load_movingai(in);
    EXPECT_FALSE(g.blocked({0, 0}));
    EXPECT_FALSE(g.blocked({0, 1}));
    for (int c = 2; c < 7; ++c) EXPECT_TRUE(g.blocked({0, c})) << c;
}

TEST(MovingAi, TooManyRowsIsParseError) {
    std::istringstream in("type octile\nheight 2\nwidth 2\nmap\n..\n..\n..\n");
    try {
        load_movingai(in);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 7u);
    }
}

TEST(MovingAi, MalformedInputs) {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return load_movingai(in);
    };
    EXPECT_THROW(parse("type octile\nheight 2\nwidth 2\nmap\n..\n"), ParseError);
    EXPECT_THROW(parse("type octile\nheight 1\nwidth 2\nmap\n...\n"), ParseError);
    EXPECT_THROW(parse("type octile\nheight 1\nwidth 2\nmap\n.x\n"), ParseError);
    EXPECT_THROW(parse("type octile\nheight x\nwidth 2\nmap\n..\n"), ParseError);
    EXPECT_THROW(parse("type tile\nheight 1\nwidth 2\nmap\n..\n"), ParseError);
    EXPECT_THROW(parse("height 1\nwidth 2\nmap\n..\n"), ParseError);
    EXPECT_THROW(parse(""), ParseError);
}

TEST(MovingAi, RoundTripPreservesContent) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto g = oracle::random_grid(rng, 1 + i % 13, 1 + (i * 5) % 17, 0.4);
        std::stringstream buf;
        write_movingai(buf, g);
        EXPECT_EQ(load_movingai(buf), g);
        std::stringstream txt;
        write_grid_text(txt, g);
        EXPECT_EQ(load_grid_text(txt), g);
    }
}

TEST(Rescale, Rules) {
    EXPECT_EQ(rescale(GridMap::empty(4, 4), 2, 2), GridMap::empty(2, 2));
    EXPECT_FALSE(rescale(GridMap::from_rows({"#.", ".."}), 1, 1).blocked({0, 0}));
    EXPECT_TRUE(rescale(GridMap::from_rows({"#.", ".#"}), 1, 1).blocked({0, 0}));
    EXPECT_TRUE(rescale(GridMap::from_rows({"##", ".."}), 1, 1).blocked({0, 0}));
    EXPECT_THROW(rescale(GridMap::empty(2, 2), 0, 1), DimensionError);
}

TEST(Rescale, BlockwiseQuadrants) {
    const auto g = GridMap::from_rows({
        "##..",
        "#...",
        "..#.",
        "...#",
    });
    const auto out = rescale(g, 2, 2);
    EXPECT_TRUE(out.blocked({0, 0}));   // 3/4
    EXPECT_FALSE(out.blocked({0, 1}));  // 0/4
    EXPECT_FALSE(out.blocked({1, 0}));  // 0/4
    EXPECT_TRUE(out.blocked({1, 1}));   // 2/4, tie
}

TEST(Rescale, NonDivisibleAndUpscale) {
    const auto g = GridMap::from_rows({"#..", "...", "..#"});
    const auto up = rescale(g, 6, 6);
    EXPECT_EQ(up.height(), 6);
    EXPECT_TRUE(up.blocked({0, 0}));
    EXPECT_TRUE(up.blocked({1, 1}));
    EXPECT_FALSE(up.blocked({2, 2}));
    EXPECT_TRUE(up.blocked({5, 5}));
    const auto down = rescale(GridMap::empty(7, 5), 3, 2);
    EXPECT_EQ(down, GridMap::empty(3, 2));
}

TEST(GridMap, RejectsBadDimensions) {
    EXPECT_THROW(GridMap(0, 3, {}), DimensionError);
    EXPECT_THROW(GridMap(2, 2, std::vector<std::uint8_t>(3)), DimensionError);
}
