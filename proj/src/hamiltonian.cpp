#include "drot/hamiltonian.hpp"

#include <optional>
#include <stdexcept>
#include <string>

#include "drot/lattice_map.hpp"

namespace drot {

Rational p_affine(const Rational& x)
{
    const i64 f = x.floor();
    return Rational(f * f) + Rational(2 * f + 1) * x.frac();
}

i64 floor_sqrt(const Rational& a)
{
    if (a < Rational(0)) throw std::domain_error("floor_sqrt: negative argument");
    return isqrt(a.floor());
}

Rational p_inverse(const Rational& a)
{
    if (a < Rational(0)) throw std::domain_error("p_inverse: negative argument " + a.str());
    const i64 s = floor_sqrt(a);
    return (a + Rational(s * (1 + s))) / Rational(2 * s + 1);
}

Rational hamiltonian_value(const PlanePoint& z)
{
    return p_affine(z.x) + p_affine(z.y);
}

Rational q_value(const PlanePoint& z)
{
    return z.x * z.x + z.y * z.y;
}

namespace {

int sign(i64 v) { return (v > 0) - (v < 0); }

// Box adjacent to `at` whose field enters it from `at`, other than `skip`.
BoxIndex entering_box(const PlanePoint& at, const std::optional<BoxIndex>& skip)
{
    std::vector<i64> ms{at.x.floor()};
    std::vector<i64> ns{at.y.floor()};
    if (at.x.is_integer()) ms.push_back(at.x.floor() - 1);
    if (at.y.is_integer()) ns.push_back(at.y.floor() - 1);

    std::optional<BoxIndex> found;
    for (i64 m : ms) {
        for (i64 n : ns) {
            BoxIndex b{m, n};
            if (skip && *skip == b) continue;
            FieldVector d = w_box(b);
            if (at.x.is_integer() && sign(d.dx) != (m == at.x.floor() ? 1 : -1)) continue;
            if (at.y.is_integer() && sign(d.dy) != (n == at.y.floor() ? 1 : -1)) continue;
            if (found) throw std::logic_error("trace_polygon: ambiguous continuation");
            found = b;
        }
    }
    if (!found) throw std::logic_error("trace_polygon: no continuation");
    return *found;
}

} // namespace

Polygon trace_polygon(const Rational& a, TraceMode mode)
{
    if (a <= Rational(0)) throw std::domain_error("trace_polygon: value must be positive");
    if (mode == TraceMode::Canonical && a.is_integer() && is_critical(a.num()))
        throw CriticalValue("trace_polygon: " + a.str() + " is a critical number");

    Polygon poly;
    poly.value = a;

    const Rational x0 = p_inverse(a / Rational(2));
    const PlanePoint start{x0, x0};
    const bool lattice_start = x0.is_integer();

    PlanePoint cur = start;
    BoxIndex box = lattice_start ? entering_box(start, std::nullopt) : BoxIndex{x0.floor(), x0.floor()};
    if (lattice_start) {
        poly.vertices.push_back(start);
        poly.edge_boxes.push_back(box);
    }

    const i64 cap = 8 * (2 * floor_sqrt(a) + 1);
    for (i64 step = 0;; ++step) {
        if (step > cap) throw std::logic_error("trace_polygon: step cap exceeded");
        const FieldVector d = w_box(box);
        const Rational dx(d.dx), dy(d.dy);
        const Rational sx = ((d.dx > 0) ? Rational(box.m + 1) - cur.x : Rational(box.m) - cur.x) / dx;
        const Rational sy = ((d.dy > 0) ? Rational(box.n + 1) - cur.y : Rational(box.n) - cur.y) / dy;
        const Rational s = sx < sy ? sx : sy;
        if (s <= Rational(0)) throw std::logic_error("trace_polygon: degenerate edge");

        if (!lattice_start && step > 0 && box == BoxIndex{x0.floor(), x0.floor()}) {
            const Rational t = (start.x - cur.x) / dx;
            if (t > Rational(0) && t <= s && cur.y + t * dy == start.y) break;
        }

        PlanePoint exit{cur.x + s * dx, cur.y + s * dy};
        if (lattice_start && exit == start) break;
        if (mode == TraceMode::Canonical && exit.x.is_integer() && exit.y.is_integer())
            throw CriticalValue("trace_polygon: level " + a.str() + " meets a lattice point");
        box = entering_box(exit, box);
        poly.vertices.push_back(exit);
        poly.edge_boxes.push_back(box);
        cur = exit;
    }
    return poly;
}

i64 vertex_type(const PlanePoint& vertex)
{
    if (vertex.x.is_integer() && vertex.y.is_integer()) return -1;
    const Rational& u = vertex.x.is_integer() ? vertex.y : vertex.x;
    return u.abs().floor();
}

i64 PolygonClass::v(std::size_t j) const
{
    if (j < 1 || j > 2 * vertex_list.size() - 1) throw std::out_of_range("vertex index " + std::to_string(j));
    return j <= vertex_list.size() ? vertex_list[j - 1] : vertex_list[2 * vertex_list.size() - j - 1];
}

PolygonClass vertex_list(i64 e)
{
    PolygonClass cls;
    cls.e = e;
    cls.interval = critical_interval(e);
    cls.k = isqrt(e) + 1;
    Polygon poly = trace_polygon(Rational(cls.interval.lo + cls.interval.hi, 2));
    if (static_cast<i64>(poly.vertices.size()) < cls.k) throw std::logic_error("vertex_list: polygon too small");
    for (i64 j = 0; j < cls.k; ++j) cls.vertex_list.push_back(vertex_type(poly.vertices[static_cast<std::size_t>(j)]));
    return cls;
}

i64 class_modulus(const PolygonClass& cls)
{
    const i64 c1 = 2 * cls.v1() + 1;
    i64 q = c1 * c1;
    for (std::size_t j = 1; j < cls.vertex_list.size(); ++j) {
        const i64 a = cls.vertex_list[j - 1];
        const i64 b = cls.vertex_list[j];
        if (a != b) q = lcm(q, (2 * a + 1) * (2 * b + 1));
    }
    return q;
}

i64 sides_count(const Rational& a)
{
    if (a <= Rational(0)) throw std::domain_error("sides_count: value must be positive");
    const i64 r = a.is_integer() ? r_two_squares(a.num()) : 0;
    return 4 * (2 * floor_sqrt(a) + 1) - r;
}

std::vector<LatticePoint> critical_circle_intersection(i64 e)
{
    if (e < 0) throw std::domain_error("critical_circle_intersection: negative argument");
    std::vector<LatticePoint> out;
    const i64 s = isqrt(e);
    for (i64 x = -s; x <= s; ++x)
        for (i64 y = -s; y <= s; ++y)
            if (x * x + y * y == e) out.push_back({x, y});
    return out;
}

} // namespace drot
