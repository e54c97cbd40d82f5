#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "drot/return_dynamics.hpp"

namespace drot {

namespace {

using BigInt = boost::multiprecision::cpp_int;

struct IPoint {
    BigInt x, y;
};

BigInt dot(const IPoint& a, const IPoint& b) { return a.x * b.x + a.y * b.y; }
BigInt cross(const IPoint& a, const IPoint& b) { return a.x * b.y - a.y * b.x; }
IPoint sub(const IPoint& a, const IPoint& b) { return {a.x - b.x, a.y - b.y}; }

BigRational point_segment_sq(const IPoint& p, const IPoint& a, const IPoint& b)
{
    const IPoint d = sub(b, a);
    const IPoint ap = sub(p, a);
    const BigInt dd = dot(d, d);
    const BigInt t = dot(ap, d);
    if (t <= 0) return BigRational(dot(ap, ap));
    if (t >= dd) {
        const IPoint bp = sub(p, b);
        return BigRational(dot(bp, bp));
    }
    const BigInt c = cross(ap, d);
    return BigRational(c * c, dd);
}

struct Line {
    BigInt slope, icept;
};

// max over s in [0,1] of |d|^2 s^2 + min_i (slope_i s + icept_i).  The
// minimum of the lines is concave and the quadratic convex, so the maximum
// sits at 0, 1 or a breakpoint of the lower envelope.
BigRational farthest_on_segment(const IPoint& a, const IPoint& b, const std::vector<IPoint>& pts)
{
    const IPoint d = sub(b, a);
    const BigInt dd = dot(d, d);
    std::vector<Line> lines;
    lines.reserve(pts.size());
    for (const IPoint& p : pts) {
        const IPoint ap = sub(a, p);
        lines.push_back({2 * dot(d, ap), dot(ap, ap)});
    }
    std::sort(lines.begin(), lines.end(), [](const Line& l, const Line& r) {
        if (l.slope != r.slope) return l.slope > r.slope;
        return l.icept < r.icept;
    });
    std::vector<Line> hull;
    for (const Line& l : lines) {
        if (!hull.empty() && hull.back().slope == l.slope) continue;
        while (hull.size() >= 2) {
            const Line& l1 = hull[hull.size() - 2];
            const Line& l2 = hull.back();
            // l2 never attains the minimum when x(l1,l) <= x(l1,l2)
            if ((l.icept - l1.icept) * (l1.slope - l2.slope) <= (l2.icept - l1.icept) * (l1.slope - l.slope))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(l);
    }

    auto envelope_at = [&](const BigRational& s) {
        BigRational best = BigRational(hull.front().slope) * s + BigRational(hull.front().icept);
        for (const Line& l : hull) {
            BigRational v = BigRational(l.slope) * s + BigRational(l.icept);
            if (v < best) best = v;
        }
        return best;
    };

    BigRational best = envelope_at(BigRational(0));
    {
        BigRational at1 = BigRational(dd) + envelope_at(BigRational(1));
        if (at1 > best) best = at1;
    }
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const BigRational s(hull[k + 1].icept - hull[k].icept, hull[k].slope - hull[k + 1].slope);
        if (s <= 0 || s >= 1) continue;
        const BigRational v = BigRational(dd) * s * s + BigRational(hull[k].slope) * s + BigRational(hull[k].icept);
        if (v > best) best = v;
    }
    return best;
}

} // namespace

ShadowDistance hausdorff_shadowing(const Lambda& lam, const PlanePoint& w)
{
    if (w.x == Rational(0) && w.y == Rational(0)) throw std::invalid_argument("hausdorff_shadowing: origin");
    const Rational level = hamiltonian_value(w);
    const bool critical = level.is_integer() && is_critical(level.num());
    const Polygon poly = trace_polygon(level, critical ? TraceMode::Tolerant : TraceMode::Canonical);
    const ReturnOrbit orbit = return_orbit_through(lam, round_down(lam, w));

    // Common integer scale for lattice points and polygon vertices.
    BigInt scale = lam.q();
    for (const PlanePoint& v : poly.vertices) {
        scale = boost::multiprecision::lcm(scale, BigInt(v.x.den()));
        scale = boost::multiprecision::lcm(scale, BigInt(v.y.den()));
    }
    std::vector<IPoint> verts;
    for (const PlanePoint& v : poly.vertices)
        verts.push_back({BigInt(v.x.num()) * (scale / v.x.den()), BigInt(v.y.num()) * (scale / v.y.den())});
    const BigInt lattice_unit = BigInt(lam.p()) * (scale / lam.q());
    std::vector<IPoint> pts;
    for (const LatticePoint& z : orbit.points) pts.push_back({lattice_unit * z.x, lattice_unit * z.y});

    BigRational worst(0);
    const std::size_t nv = verts.size();
    for (const IPoint& p : pts) {
        BigRational best = point_segment_sq(p, verts[0], verts[1 % nv]);
        for (std::size_t i = 1; i < nv; ++i) {
            BigRational d = point_segment_sq(p, verts[i], verts[(i + 1) % nv]);
            if (d < best) best = d;
        }
        if (best > worst) worst = best;
    }
    for (std::size_t i = 0; i < nv; ++i) {
        BigRational d = farthest_on_segment(verts[i], verts[(i + 1) % nv], pts);
        if (d > worst) worst = d;
    }

    ShadowDistance out;
    out.squared = worst / BigRational(scale * scale);
    out.value = std::sqrt(static_cast<double>(out.squared));
    out.orbit_points = pts.size();
    out.polygon_vertices = nv;
    return out;
}

} // namespace drot
