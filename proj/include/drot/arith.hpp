#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "drot/errors.hpp"

namespace drot {

using i64 = std::int64_t;
__extension__ typedef __int128 i128;

// Floor and ceiling of a/b, rounding toward -inf and +inf.
i64 floor_div(i64 a, i64 b);
i64 ceil_div(i64 a, i64 b);
i128 floor_div128(i128 a, i128 b);
i128 ceil_div128(i128 a, i128 b);

// Non-negative remainder of a modulo m > 0.
i64 mod(i64 a, i64 m);

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);

// Largest s with s*s <= n.
i64 isqrt(i64 n);

i64 checked_narrow(i128 v);

class Rational {
public:
    Rational() = default;
    Rational(i64 n) : num_(n) {} // NOLINT(google-explicit-constructor)
    Rational(i64 n, i64 d);

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    i64 floor() const { return floor_div(num_, den_); }
    i64 ceil() const { return ceil_div(num_, den_); }
    // Fractional part {x} = x - floor(x), in [0,1).
    Rational frac() const;
    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // "p/q", or just "p" when the denominator is 1.
    std::string str() const;
    // Accepts "p/q", "p" and finite decimals such as "1.3" or "-0.25".
    static Rational parse(const std::string& text);

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    static Rational from128(i128 n, i128 d);

    i64 num_ = 0;
    i64 den_ = 1;
};

// Number of (x,y) in Z^2 with x^2 + y^2 = n.  r(0) is taken to be 1.
i64 r_two_squares(i64 n);

// n is a sum of two squares (0 included).
bool is_critical(i64 n);

// All critical numbers <= x, ascending.  Sieve over x^2 + y^2.
std::vector<i64> critical_numbers_up_to(i64 x);

// Least critical number strictly greater than e.
i64 next_critical(i64 e);

struct CriticalInterval {
    i64 lo = 0;
    i64 hi = 1;
};

// (e, next_critical(e)); e must be critical.
CriticalInterval critical_interval(i64 e);

// E(x) sqrt(ln x) / x, to be compared with the Landau-Ramanujan constant.
double landau_ramanujan_ratio(i64 x);

inline constexpr double kLandauRamanujan = 0.764223653589220;

} // namespace drot
