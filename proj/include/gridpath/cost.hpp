#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>

#include "gridpath/error.hpp"

namespace gridpath {

/// Path cost on the 8-connected grid, kept as a pair of move counts so that
/// comparisons are exact. The value is `cardinals + diagonals * sqrt(2)`.
struct ExactCost {
    std::uint32_t cardinals = 0;
    std::uint32_t diagonals = 0;

    constexpr ExactCost() = default;
    constexpr ExactCost(std::uint32_t c, std::uint32_t d) : cardinals(c), diagonals(d) {}

    static constexpr ExactCost cardinal() { return {1, 0}; }
    static constexpr ExactCost diagonal() { return {0, 1}; }

    constexpr bool is_zero() const { return cardinals == 0 && diagonals == 0; }

    double to_float() const {
        return static_cast<double>(cardinals) + static_cast<double>(diagonals) * std::numbers::sqrt2;
    }

    friend constexpr bool operator==(const ExactCost&, const ExactCost&) = default;

    // c1 + d1*r2 vs c2 + d2*r2  <=>  (c1 - c2) vs (d2 - d1)*r2.
    // sqrt(2) is irrational, so equality only happens when both counts match.
    friend constexpr std::strong_ordering operator<=>(const ExactCost& a, const ExactCost& b) {
        const std::int64_t lhs = static_cast<std::int64_t>(a.cardinals) - b.cardinals;
        const std::int64_t rhs = static_cast<std::int64_t>(b.diagonals) - a.diagonals;
        if (lhs == 0 && rhs == 0) return std::strong_ordering::equal;
        if (lhs >= 0 && rhs <= 0) return std::strong_ordering::greater;
        if (lhs <= 0 && rhs >= 0) return std::strong_ordering::less;
        // Same sign on both sides; compare squares. |lhs|, |rhs| < 2^32 so
        // 2*rhs^2 < 2^65 fits in unsigned 128-bit.
        using u128 = unsigned __int128;
        const u128 l2 = static_cast<u128>(lhs < 0 ? -lhs : lhs) * static_cast<u128>(lhs < 0 ? -lhs : lhs);
        const u128 r2 = 2 * static_cast<u128>(rhs < 0 ? -rhs : rhs) * static_cast<u128>(rhs < 0 ? -rhs : rhs);
        if (lhs > 0) return l2 > r2 ? std::strong_ordering::greater : std::strong_ordering::less;
        return l2 > r2 ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    friend ExactCost operator+(const ExactCost& a, const ExactCost& b) {
        constexpr auto max = std::numeric_limits<std::uint32_t>::max();
        if (a.cardinals > max - b.cardinals || a.diagonals > max - b.diagonals) {
            throw OverflowError("ExactCost counter overflow");
        }
        return {a.cardinals + b.cardinals, a.diagonals + b.diagonals};
    }

    ExactCost& operator+=(const ExactCost& o) { return *this = *this + o; }

    friend std::ostream& operator<<(std::ostream& os, const ExactCost& c) {
        return os << '(' << c.cardinals << ',' << c.diagonals << ')';
    }
};

inline ExactCost add(const ExactCost& a, const ExactCost& b) { return a + b; }

inline std::strong_ordering compare(const ExactCost& a, const ExactCost& b) { return a <=> b; }

inline double to_float(const ExactCost& c) { return c.to_float(); }

}  // namespace gridpath
