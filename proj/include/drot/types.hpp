#pragma once

#include <compare>
#include <functional>

#include "drot/arith.hpp"

namespace drot {

// Unscaled point of Z^2; it stands for lambda*(x,y).
struct LatticePoint {
    i64 x = 0;
    i64 y = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
inline LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }

// Unit square {floor(x) = m, floor(y) = n} in scaled coordinates.
struct BoxIndex {
    i64 m = 0;
    i64 n = 0;

    friend bool operator==(const BoxIndex&, const BoxIndex&) = default;
    friend auto operator<=>(const BoxIndex&, const BoxIndex&) = default;
};

// Unscaled displacement; stands for lambda*(dx,dy).
struct FieldVector {
    i64 dx = 0;
    i64 dy = 0;

    friend bool operator==(const FieldVector&, const FieldVector&) = default;
};

inline LatticePoint operator+(LatticePoint a, FieldVector v) { return {a.x + v.dx, a.y + v.dy}; }

// Exact point of the real plane (already scaled).
struct PlanePoint {
    Rational x;
    Rational y;

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

struct LatticePointHash {
    std::size_t operator()(const LatticePoint& z) const noexcept
    {
        auto h = static_cast<std::uint64_t>(z.x) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(z.y) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

} // namespace drot
