#pragma once

// Slow, independent reference implementations for the tests.  They share
// no code with the library beyond the value types.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

// floor(a/b) through long double; exact while |a|, |b| < 2^53.
inline i64 floor_ratio(i64 a, i64 b)
{
    return static_cast<i64>(std::floor(static_cast<long double>(a) / static_cast<long double>(b)));
}

inline i64 reps(i64 n)
{
    i64 count = 0;
    for (i64 x = 0; x * x <= n; ++x) {
        const i64 rest = n - x * x;
        i64 y = static_cast<i64>(std::sqrt(static_cast<double>(rest)));
        while (y * y > rest) --y;
        while ((y + 1) * (y + 1) <= rest) ++y;
        if (y * y != rest) continue;
        count += (x == 0 ? 1 : 2) * (y == 0 ? 1 : 2);
    }
    return count;
}

inline std::vector<i64> sums_of_two_squares(i64 x)
{
    std::vector<char> hit(static_cast<std::size_t>(x + 1), 0);
    for (i64 a = 0; a * a <= x; ++a)
        for (i64 b = a; a * a + b * b <= x; ++b) hit[static_cast<std::size_t>(a * a + b * b)] = 1;
    std::vector<i64> out;
    for (i64 n = 0; n <= x; ++n)
        if (hit[static_cast<std::size_t>(n)]) out.push_back(n);
    return out;
}

struct Map {
    i64 p, q;
    std::pair<i64, i64> f(i64 x, i64 y) const { return {floor_ratio(p * x, q) - y, x}; }
    std::pair<i64, i64> f4(i64 x, i64 y) const
    {
        std::pair<i64, i64> z{x, y};
        for (int i = 0; i < 4; ++i) z = f(z.first, z.second);
        return z;
    }
    std::pair<i64, i64> box(i64 x, i64 y) const { return {floor_ratio(p * x, q), floor_ratio(p * y, q)}; }
    bool transition(i64 x, i64 y) const
    {
        const auto z = f4(x, y);
        return box(z.first, z.second) != box(x, y);
    }
    // first n >= 1 with F^{4n}(z) a transition point
    std::pair<std::pair<i64, i64>, i64> next_transition(i64 x, i64 y) const
    {
        std::pair<i64, i64> z = f4(x, y);
        i64 t = 1;
        while (!transition(z.first, z.second)) {
            z = f4(z.first, z.second);
            ++t;
        }
        return {z, t};
    }
    i64 period(i64 x, i64 y, i64 cap) const
    {
        std::pair<i64, i64> z = f(x, y);
        for (i64 t = 1; t <= cap; ++t) {
            if (z.first == x && z.second == y) return t;
            z = f(z.first, z.second);
        }
        return -1;
    }
};

// Piecewise-affine P on a rational x = n/d, returned as (num, den) over d.
inline std::pair<i64, i64> p_affine(i64 n, i64 d)
{
    const i64 f = floor_ratio(n, d);
    return {f * f * d + (2 * f + 1) * (n - f * d), d};
}

// Distinct points where the level set P(x) + P(y) = a (a = an/ad) meets the
// grid lines x in Z or y in Z.  Each point is an exact rational pair stored
// as cross-multiplied integers over a shared denominator.
inline std::size_t grid_crossings(i64 an, i64 ad)
{
    // On x = m, P(y) = a - m^2 =: b >= 0, y = +-P^{-1}(b) with
    // P^{-1}(b) = (b + s(s+1)) / (2s+1), s = floor(sqrt b).
    std::set<std::pair<std::pair<i64, i64>, std::pair<i64, i64>>> pts; // ((x_num, x_den), (y_num, y_den)) reduced
    auto reduce = [](i64 n, i64 d) {
        i64 g = std::gcd(n < 0 ? -n : n, d);
        return std::pair<i64, i64>{n / g, d / g};
    };
    for (i64 m = 0; m * m * ad <= an; ++m) {
        const i64 bn = an - m * m * ad; // b = bn / ad
        i64 s = 0;
        while ((s + 1) * (s + 1) * ad <= bn) ++s;
        const i64 yn = bn + s * (s + 1) * ad;
        const i64 yd = (2 * s + 1) * ad;
        for (i64 sx : {m, -m})
            for (i64 sy : {1, -1}) {
                const auto x = reduce(sx, 1);
                const auto y = reduce(sy * yn, yd);
                pts.insert({x, y});
                pts.insert({y, x});
            }
    }
    return pts.size();
}

} // namespace oracle
