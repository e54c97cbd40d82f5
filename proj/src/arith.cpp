#include "drot/arith.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace drot {

i64 floor_div(i64 a, i64 b)
{
    if (b == 0) throw std::domain_error("floor_div: division by zero");
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 ceil_div(i64 a, i64 b)
{
    if (b == 0) throw std::domain_error("ceil_div: division by zero");
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

i128 floor_div128(i128 a, i128 b)
{
    if (b == 0) throw std::domain_error("floor_div: division by zero");
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div128(i128 a, i128 b)
{
    if (b == 0) throw std::domain_error("ceil_div: division by zero");
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 gcd(i64 a, i64 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b)
{
    if (a == 0 || b == 0) return 0;
    i128 l = static_cast<i128>(a / gcd(a, b)) * b;
    return checked_narrow(l < 0 ? -l : l);
}

i64 isqrt(i64 n)
{
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    i64 s = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (static_cast<i128>(s) * s > n) --s;
    while (static_cast<i128>(s + 1) * (s + 1) <= n) ++s;
    return s;
}

i64 checked_narrow(i128 v)
{
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw OverflowError("integer overflow in exact arithmetic");
    return static_cast<i64>(v);
}

// ---------------------------------------------------------------- Rational

namespace {

i128 gcd128(i128 a, i128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rational::Rational(i64 n, i64 d)
{
    *this = from128(n, d);
}

Rational Rational::from128(i128 n, i128 d)
{
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num_ = checked_narrow(n);
    r.den_ = checked_narrow(d);
    return r;
}

Rational Rational::frac() const
{
    return from128(static_cast<i128>(num_) - static_cast<i128>(floor()) * den_, den_);
}

std::string Rational::str() const
{
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text)
{
    auto to_i64 = [&](const std::string& s) -> i64 {
        if (s.empty()) throw std::invalid_argument("bad rational: '" + text + "'");
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument("bad rational: '" + text + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash != std::string::npos)
        return Rational(to_i64(text.substr(0, slash)), to_i64(text.substr(slash + 1)));
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(to_i64(text));
    std::string whole = text.substr(0, dot);
    std::string digits = text.substr(dot + 1);
    if (digits.empty() || digits.size() > 15 || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad rational: '" + text + "'");
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    i64 scale = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) scale *= 10;
    i64 w = to_i64(whole);
    i64 f = to_i64(digits);
    i128 n = static_cast<i128>(w < 0 ? -w : w) * scale + f;
    return from128(neg ? -n : n, scale);
}

Rational operator+(const Rational& a, const Rational& b)
{
    return Rational::from128(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                             static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b)
{
    return Rational::from128(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                             static_cast<i128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b)
{
    return Rational::from128(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational::from128(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------- two squares

i64 r_two_squares(i64 n)
{
    if (n < 0) throw std::domain_error("r_two_squares: negative argument");
    if (n == 0) return 1;
    while (n % 2 == 0) n /= 2;
    i64 prod = 1;
    for (i64 p = 3; p * p <= n; p += 2) {
        if (n % p != 0) continue;
        int c = 0;
        while (n % p == 0) {
            n /= p;
            ++c;
        }
        if (p % 4 == 1)
            prod *= (c + 1);
        else if (c % 2 == 1)
            return 0;
    }
    if (n > 1) {
        if (n % 4 == 1)
            prod *= 2;
        else
            return 0;
    }
    return 4 * prod;
}

bool is_critical(i64 n)
{
    return n == 0 || r_two_squares(n) > 0;
}

std::vector<i64> critical_numbers_up_to(i64 x)
{
    if (x < 0) return {};
    std::vector<char> mark(static_cast<std::size_t>(x) + 1, 0);
    for (i64 a = 0; a * a <= x; ++a)
        for (i64 b = a; a * a + b * b <= x; ++b) mark[static_cast<std::size_t>(a * a + b * b)] = 1;
    std::vector<i64> out;
    for (i64 n = 0; n <= x; ++n)
        if (mark[static_cast<std::size_t>(n)]) out.push_back(n);
    return out;
}

i64 next_critical(i64 e)
{
    i64 n = e + 1;
    while (!is_critical(n)) ++n;
    return n;
}

CriticalInterval critical_interval(i64 e)
{
    if (!is_critical(e)) throw std::invalid_argument("critical_interval: " + std::to_string(e) + " is not critical");
    return {e, next_critical(e)};
}

double landau_ramanujan_ratio(i64 x)
{
    if (x < 2) throw std::domain_error("landau_ramanujan_ratio: x < 2");
    auto count = static_cast<double>(critical_numbers_up_to(x).size());
    return count * std::sqrt(std::log(static_cast<double>(x))) / static_cast<double>(x);
}

} // namespace drot
