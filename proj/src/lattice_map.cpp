#include "drot/lattice_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace drot {

Lambda::Lambda(Rational value) : value_(value)
{
    if (value_ <= Rational(0) || value_ >= Rational(2))
        throw std::invalid_argument("lambda must lie in (0,2), got " + value_.str());
}

Lambda Lambda::parse(const std::string& text)
{
    if (text.rfind("2^-", 0) == 0) {
        std::size_t used = 0;
        int k = std::stoi(text.substr(3), &used);
        if (used != text.size() - 3 || k < 0 || k > 60) throw std::invalid_argument("bad lambda: '" + text + "'");
        return Lambda(Rational(1, i64{1} << k));
    }
    return Lambda(Rational::parse(text));
}

double Lambda::rotation_number_approx() const
{
    return std::acos(value_.to_double() / 2.0) / (2.0 * std::numbers::pi);
}

double Lambda::t_star_approx() const
{
    return std::numbers::pi / value_.to_double();
}

LatticePoint f_apply(const Lambda& lam, LatticePoint z)
{
    return {lam.floor_mul(z.x) - z.y, z.x};
}

LatticePoint f_inverse(const Lambda& lam, LatticePoint z)
{
    return {z.y, lam.floor_mul(z.y) - z.x};
}

LatticePoint f_power(const Lambda& lam, LatticePoint z, i64 k)
{
    for (; k > 0; --k) z = f_apply(lam, z);
    for (; k < 0; ++k) z = f_inverse(lam, z);
    return z;
}

LatticePoint f4(const Lambda& lam, LatticePoint z)
{
    return f_power(lam, z, 4);
}

LatticePoint f4_inverse(const Lambda& lam, LatticePoint z)
{
    return f_power(lam, z, -4);
}

LatticePoint reversor_h(const Lambda& lam, LatticePoint z)
{
    return {lam.floor_mul(z.y) - z.x, z.y};
}

bool fix_h(const Lambda& lam, LatticePoint z)
{
    return 2 * z.x == lam.floor_mul(z.y);
}

bool in_h_segment(const Lambda& lam, LatticePoint z, i64 e)
{
    i64 s = isqrt(e);
    i64 level = (s % 2 == 0) ? s : -(s + 1);
    return 2 * z.x == level && lam.floor_mul(z.y) == level;
}

BoxIndex box_of(const Lambda& lam, LatticePoint z)
{
    return {lam.floor_mul(z.x), lam.floor_mul(z.y)};
}

FieldVector w_box(BoxIndex b)
{
    return {2 * b.n + 1, -(2 * b.m + 1)};
}

FieldVector w_field(const PlanePoint& point)
{
    return w_box({point.x.floor(), point.y.floor()});
}

FieldLabels v_labels(const Lambda& lam, LatticePoint z)
{
    FieldLabels l;
    l.m = lam.floor_mul(z.x);
    l.a = ceil_div(lam.p() * (z.y - l.m), lam.q()) - 1;
    l.b = ceil_div(lam.p() * (z.x + l.a + 1), lam.q()) - 1;
    l.c = lam.floor_mul(z.y - l.m - l.b - 1);
    l.d = lam.floor_mul(z.x + l.a + l.c + 1);
    l.v = {l.a + l.c + 1, -(l.m + l.b + 1)};
    return l;
}

FieldVector v_field(const Lambda& lam, LatticePoint z)
{
    LatticePoint image = f4(lam, z);
    return {image.x - z.x, image.y - z.y};
}

bool is_transition_point(const Lambda& lam, LatticePoint z)
{
    return box_of(lam, f4(lam, z)) != box_of(lam, z);
}

bool in_lambda_mn(const Lambda& lam, LatticePoint z, BoxIndex target)
{
    BoxIndex here = box_of(lam, z);
    BoxIndex there = box_of(lam, f4(lam, z));
    return here != there && there == target;
}

bool in_sigma(const Lambda& lam, LatticePoint z)
{
    if (!is_transition_point(lam, z)) return false;
    const i64 p = lam.p();
    const i64 q = lam.q();
    BoxIndex b = box_of(lam, z);
    for (i64 m = b.m; m <= b.m + 1; ++m) {
        for (i64 n = b.n; n <= b.n + 1; ++n) {
            i64 k = std::max(std::abs(2 * m + 1), std::abs(2 * n + 1));
            i128 bound = static_cast<i128>(p) * (k + 2);
            i128 ex = static_cast<i128>(p) * z.x - static_cast<i128>(q) * m;
            i128 ey = static_cast<i128>(p) * z.y - static_cast<i128>(q) * n;
            if (ex < 0) ex = -ex;
            if (ey < 0) ey = -ey;
            if (ex <= bound && ey <= bound) return true;
        }
    }
    return false;
}

std::optional<i64> orbit_period(const Lambda& lam, LatticePoint z, i64 cap)
{
    if (cap < 1) throw std::invalid_argument("orbit_period: cap must be >= 1");
    LatticePoint cur = z;
    for (i64 t = 1; t <= cap; ++t) {
        cur = f_apply(lam, cur);
        if (cur == z) return t;
    }
    return std::nullopt;
}

double normalised_period(const Lambda& lam, i64 period)
{
    return lam.value().to_double() * static_cast<double>(period) / std::numbers::pi;
}

Mu1 measure_mu1(const Lambda& lam, const Rational& r)
{
    if (r <= Rational(0)) throw std::invalid_argument("measure_mu1: r must be positive");
    // |x| < r/lambda, i.e. |x| * p * r.den < r.num * q
    const i64 reach = ceil_div(checked_narrow(static_cast<i128>(r.num()) * lam.q()),
                               checked_narrow(static_cast<i128>(r.den()) * lam.p())) - 1;
    Mu1 out;
    for (i64 x = -reach; x <= reach; ++x) {
        for (i64 y = -reach; y <= reach; ++y) {
            LatticePoint z{x, y};
            ++out.total;
            FieldVector v = v_field(lam, z);
            if (v == w_box(box_of(lam, z))) ++out.regular;
        }
    }
    return out;
}

} // namespace drot
