#include "drot/return_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "drot/parallel.hpp"

namespace drot {

namespace {

bool in_first_quadrant(LatticePoint z) { return z.x >= 0 && z.y >= 0; }

i64 abs_delta(LatticePoint z)
{
    i64 d = z.x - z.y;
    return d < 0 ? -d : d;
}

std::string show(LatticePoint z)
{
    return "(" + std::to_string(z.x) + "," + std::to_string(z.y) + ")";
}

// The transition points of a stored orbit segment.  points[i+4] is F^4 of
// points[i] wherever it exists.
std::vector<std::size_t> transition_indices(const Lambda& lam, const std::vector<LatticePoint>& points)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        LatticePoint image = (i + 4 < points.size()) ? points[i + 4] : f4(lam, points[i]);
        if (box_of(lam, image) != box_of(lam, points[i])) out.push_back(i);
    }
    return out;
}

} // namespace

i64 default_return_cap(const Lambda& lam)
{
    return static_cast<i64>(std::ceil(10.0 * lam.t_star_approx()));
}

bool in_return_domain(const Lambda& lam, LatticePoint z)
{
    if (!in_first_quadrant(z)) return false;
    const i64 d = abs_delta(z);
    return d <= abs_delta(f4(lam, z)) && d < abs_delta(f4_inverse(lam, z));
}

i64 scaled_hamiltonian(const Lambda& lam, LatticePoint z)
{
    const i128 p = lam.p();
    const i128 q = lam.q();
    auto part = [&](i64 x) -> i128 {
        const i128 f = lam.floor_mul(x);
        return q * f * f + (2 * f + 1) * (p * x - q * f);
    };
    return checked_narrow(part(z.x) + part(z.y));
}

Rational hamiltonian_at(const Lambda& lam, LatticePoint z)
{
    return Rational(scaled_hamiltonian(lam, z), lam.q());
}

// ------------------------------------------------------------ return map

ReturnOrbit return_map(const Lambda& lam, LatticePoint z, i64 cap)
{
    if (!in_return_domain(lam, z)) throw std::invalid_argument("return_map: " + show(z) + " is not in X");
    if (cap <= 0) cap = default_return_cap(lam);
    ReturnOrbit orbit;
    orbit.seed = z;
    orbit.points.push_back(z);
    LatticePoint cur = z;
    for (i64 k = 1;; ++k) {
        if (k > cap) throw IterationCap("return_map: no return to X within " + std::to_string(cap) + " steps");
        cur = f_apply(lam, cur);
        orbit.points.push_back(cur);
        if (in_return_domain(lam, cur)) {
            orbit.tau = k;
            break;
        }
    }
    orbit.vertices = transition_indices(lam, orbit.points);
    return orbit;
}

ReturnOrbit return_orbit_through(const Lambda& lam, LatticePoint z, i64 cap)
{
    if (z == LatticePoint{0, 0}) throw std::invalid_argument("return_orbit_through: origin");
    if (cap <= 0) cap = default_return_cap(lam);
    LatticePoint base = z;
    i64 back = 0;
    while (!in_return_domain(lam, base)) {
        if (++back > cap) throw IterationCap("return_orbit_through: no earlier point of X within cap");
        base = f_inverse(lam, base);
    }
    ReturnOrbit orbit = return_map(lam, base, cap);
    if (back > orbit.tau) throw std::logic_error("return_orbit_through: seed beyond the return");
    orbit.seed = z;
    orbit.tau_minus = back;
    orbit.tau -= back;
    return orbit;
}

// ------------------------------------------------------------- strip map

namespace {

constexpr i64 kUnbounded = std::numeric_limits<i64>::max();

// First j >= 0 at which lo (<|<=) A + jB (<|<=) hi fails.
i64 first_failure(i128 a, i128 b, i128 lo, bool lo_strict, i128 hi, bool hi_strict)
{
    auto holds = [&](i128 v) {
        return (lo_strict ? lo < v : lo <= v) && (hi_strict ? v < hi : v <= hi);
    };
    if (!holds(a)) return 0;
    if (b == 0) return kUnbounded;
    i128 j;
    if (b > 0)
        j = hi_strict ? ceil_div128(hi - a, b) : floor_div128(hi - a, b) + 1;
    else
        j = lo_strict ? ceil_div128(a - lo, -b) : floor_div128(a - lo, -b) + 1;
    return j > kUnbounded ? kUnbounded : static_cast<i64>(j);
}

// Number of consecutive points z + jw, j >= 0, that sit in box (m,n) off
// Lambda with F^4 = +w.  Every condition of the four-step labels is linear
// along the ray, so the run length is an exact minimum of wall distances.
i64 straight_run(const Lambda& lam, LatticePoint z, BoxIndex b)
{
    const i128 p = lam.p();
    const i128 q = lam.q();
    const FieldVector w = w_box(b);
    const i128 bx = p * w.dx;
    const i128 by = p * w.dy;
    const i128 qm = q * b.m, qm1 = q * (b.m + 1);
    const i128 qn = q * b.n, qn1 = q * (b.n + 1);
    i64 run = kUnbounded;
    run = std::min(run, first_failure(p * z.x, bx, qm, false, qm1, true));
    run = std::min(run, first_failure(p * z.y, by, qn, false, qn1, true));
    run = std::min(run, first_failure(p * (z.y - b.m), by, qn, true, qn1, false));
    run = std::min(run, first_failure(p * (z.x + b.n + 1), bx, qm, true, qm1, false));
    run = std::min(run, first_failure(p * (z.y - 2 * b.m - 1), by, qn, false, qn1, true));
    run = std::min(run, first_failure(p * (z.x + 2 * b.n + 1), bx, qm, false, qm1, true));
    return run;
}

constexpr i64 kStripLoopCap = 50'000'000;

} // namespace

StripStep strip_map(const Lambda& lam, LatticePoint z)
{
    if (z == LatticePoint{0, 0}) throw std::invalid_argument("strip_map: origin");
    StripStep s{f4(lam, z), 1};
    for (i64 guard = 0;; ++guard) {
        if (guard > kStripLoopCap) throw IterationCap("strip_map: no landing in Lambda");
        if (is_transition_point(lam, s.psi)) return s;
        const BoxIndex b = box_of(lam, s.psi);
        const i64 run = straight_run(lam, s.psi, b);
        if (run == kUnbounded) throw std::logic_error("strip_map: unbounded run");
        if (run > 0) {
            const FieldVector w = w_box(b);
            s.psi = {s.psi.x + run * w.dx, s.psi.y + run * w.dy};
            s.t += run;
        } else {
            s.psi = f4(lam, s.psi);
            s.t += 1;
        }
    }
}

StripStep strip_map_iterated(const Lambda& lam, LatticePoint z)
{
    if (z == LatticePoint{0, 0}) throw std::invalid_argument("strip_map_iterated: origin");
    StripStep s{f4(lam, z), 1};
    while (!is_transition_point(lam, s.psi)) {
        if (s.t > kStripLoopCap) throw IterationCap("strip_map_iterated: no landing in Lambda");
        s.psi = f4(lam, s.psi);
        ++s.t;
    }
    return s;
}

StripStep strip_map_inverse(const Lambda& lam, LatticePoint z)
{
    if (z == LatticePoint{0, 0}) throw std::invalid_argument("strip_map_inverse: origin");
    StripStep s{f4_inverse(lam, z), 1};
    while (!is_transition_point(lam, s.psi)) {
        if (s.t > kStripLoopCap) throw IterationCap("strip_map_inverse: no landing in Lambda");
        s.psi = f4_inverse(lam, s.psi);
        ++s.t;
    }
    return s;
}

// ------------------------------------------------------------ orbit code

namespace {

VertexRecord make_vertex(const Lambda& lam, int j, LatticePoint point, i64 expected_type, i64 q_class)
{
    const LatticePoint image = f4(lam, point);
    const BoxIndex from = box_of(lam, point);
    const BoxIndex to = box_of(lam, image);
    if (from == to) throw std::logic_error("orbit_code: vertex is not a transition point");
    if (from.m != to.m && from.n != to.n)
        throw NotRegular("orbit_code: corner crossing at " + show(point));

    VertexRecord r;
    r.j = j;
    r.point = point;
    r.box = to;
    r.integer_is_x = from.m != to.m;
    const i64 line = r.integer_is_x ? std::max(from.m, to.m) : std::max(from.n, to.n);
    const i64 along = r.integer_is_x ? from.n : from.m;
    r.type = along >= 0 ? along : -along - 1;
    if (r.type != expected_type)
        throw NotRegular("orbit_code: vertex " + std::to_string(j) + " has type " + std::to_string(r.type) +
                         ", class expects " + std::to_string(expected_type));
    const i64 int_off = (r.integer_is_x ? point.x : point.y) - lam.ceil_over(line);
    const i64 non_off = (r.integer_is_x ? point.y : point.x) - lam.ceil_over(along);
    r.offset = r.integer_is_x ? LatticePoint{int_off, non_off} : LatticePoint{non_off, int_off};
    r.sigma = mod(int_off, 2 * r.type + 1);
    r.gamma = mod(non_off, q_class / (2 * r.type + 1));

    const FieldVector v{image.x - point.x, image.y - point.y};
    const FieldVector w = w_box(to);
    const i64 kick_int = r.integer_is_x ? v.dx - w.dx : v.dy - w.dy;
    if (kick_int != 0) throw NotRegular("orbit_code: field mismatch in the integer coordinate at " + show(point));
    r.epsilon = r.integer_is_x ? v.dy - w.dy : v.dx - w.dx;
    return r;
}

} // namespace

OrbitCode orbit_code(const Lambda& lam, LatticePoint z, const PolygonClass& cls)
{
    const i64 v1 = cls.v1();
    if (box_of(lam, z) != BoxIndex{v1, v1}) throw NotRegular("orbit_code: " + show(z) + " is outside B_{v1,v1}");
    if (is_transition_point(lam, z)) throw NotRegular("orbit_code: " + show(z) + " is a transition point");
    const i64 q_class = class_modulus(cls);

    OrbitCode code;
    const StripStep back = strip_map_inverse(lam, z);
    VertexRecord first = make_vertex(lam, -1, back.psi, v1, q_class);
    first.transit = back.t;
    code.sigma_minus1 = first.sigma;
    code.vertices.push_back(first);

    const std::size_t count = 2 * cls.vertex_list.size() - 1;
    StripStep step = strip_map(lam, z);
    for (std::size_t j = 1; j <= count; ++j) {
        VertexRecord r = make_vertex(lam, static_cast<int>(j), step.psi, cls.v(j), q_class);
        step = strip_map(lam, step.psi);
        r.transit = step.t;
        code.sigma.push_back(r.sigma);
        code.gamma.push_back(r.gamma);
        code.vertices.push_back(r);
    }
    return code;
}

// ---------------------------------------------------------- regularity

OrbitScan scan_return_orbit(const Lambda& lam, LatticePoint z, const PolygonClass& cls, i64 cap)
{
    if (cap <= 0) cap = default_return_cap(lam);
    OrbitScan s;
    const i64 v1 = cls.v1();
    s.in_box = box_of(lam, z) == BoxIndex{v1, v1};
    s.off_lambda = !is_transition_point(lam, z);
    s.in_x = in_return_domain(lam, z);
    if (!(s.in_box && s.off_lambda && s.in_x)) return s;

    const i64 lo = cls.interval.lo * lam.q();
    const i64 hi = cls.interval.hi * lam.q();
    const LatticePoint gz = reversor_g(z);

    std::vector<LatticePoint> points{z};
    LatticePoint cur = z;
    for (i64 k = 1; k <= cap; ++k) {
        cur = f_apply(lam, cur);
        points.push_back(cur);
        if (in_return_domain(lam, cur)) {
            s.completed = true;
            s.tau = k;
            break;
        }
    }
    if (!s.completed) return s;
    s.phi = cur;

    for (std::size_t i = 0; i < points.size(); ++i) {
        const LatticePoint pt = points[i];
        const i64 h = scaled_hamiltonian(lam, pt);
        if (h <= lo || h >= hi) s.stays_in_class = false;
        if (in_sigma(lam, pt)) s.avoids_sigma = false;
        if (pt == gz) s.meets_g_image = true;
        if (i + 1 < points.size() && (fix_g(pt) || fix_h(lam, pt))) ++s.fix_hits;
    }
    return s;
}

RegularDomain regular_domain(const Lambda& lam, i64 e, i64 cap)
{
    RegularDomain dom;
    dom.lam = lam.value();
    dom.cls = vertex_list(e);
    const i64 v1 = dom.cls.v1();
    if (!lam.small_enough(v1))
        throw std::invalid_argument("regular_domain: lambda " + lam.str() + " is not below lambda_" + std::to_string(v1));
    const i64 c = 2 * v1 + 1;
    const i64 q = lam.q();
    const i64 lo = dom.cls.interval.lo * q;
    const i64 hi = dom.cls.interval.hi * q;
    const Rational inv(lam.q(), lam.p());

    const i64 y_from = (p_inverse(Rational(dom.cls.interval.lo, 2)) * inv).floor() - c - 1;
    const i64 y_to = (p_inverse(Rational(dom.cls.interval.hi, 2)) * inv).ceil() + c + 1;

    std::vector<DomainPoint> cand;
    for (i64 u = -c; u < c; ++u) {
        for (i64 y = y_from; y <= y_to; ++y) {
            DomainPoint d;
            d.z = {y + u, y};
            d.value = scaled_hamiltonian(lam, d.z);
            if (d.value > lo && d.value < hi) cand.push_back(d);
        }
    }
    dom.candidates = static_cast<i64>(cand.size());

    std::vector<char> ok(cand.size(), 0);
    parallel_for(cand.size(), [&](std::size_t i) {
        OrbitScan s = scan_return_orbit(lam, cand[i].z, dom.cls, cap);
        ok[i] = s.regular() ? 1 : 0;
        cand[i].phi = s.phi;
        cand[i].tau = s.tau;
        cand[i].meets_g_image = s.meets_g_image;
        cand[i].fix_hits = s.fix_hits;
    });

    std::vector<std::size_t> order(cand.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cand[a].value != cand[b].value) return cand[a].value < cand[b].value;
        return cand[a].z < cand[b].z;
    });

    // Group by value; an irregular point spoils its whole value.
    struct Group {
        i64 value;
        bool regular;
        std::size_t begin, end;
    };
    std::vector<Group> groups;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        bool all = true;
        while (j < order.size() && cand[order[j]].value == cand[order[i]].value) {
            all = all && ok[order[j]];
            ++j;
        }
        groups.push_back({cand[order[i]].value, all, i, j});
        i = j;
    }
    for (std::size_t i = 0; i < cand.size(); ++i)
        if (!ok[i]) ++dom.irregular;

    i64 best_len = -1;
    std::size_t best_a = 0, best_b = 0;
    i64 best_lo = 0, best_hi = 0;
    for (std::size_t g = 0; g < groups.size();) {
        if (!groups[g].regular) {
            ++g;
            continue;
        }
        std::size_t h = g;
        while (h < groups.size() && groups[h].regular) ++h;
        const i64 left = g == 0 ? lo : groups[g - 1].value;
        const i64 right = h == groups.size() ? hi : groups[h].value;
        const i64 len = right - left;
        if (len > best_len) {
            dom.tie = false;
        } else if (len == best_len) {
            dom.tie = true;
        }
        if (len >= best_len) {
            best_len = len;
            best_a = g;
            best_b = h;
            best_lo = left;
            best_hi = right;
        }
        g = h;
    }
    if (best_len < 0)
        throw EmptyDomain("regular_domain: no regular points for e = " + std::to_string(e) + " at lambda " + lam.str());

    dom.lo = Rational(best_lo, q);
    dom.hi = Rational(best_hi, q);
    for (std::size_t g = best_a; g < best_b; ++g)
        for (std::size_t i = groups[g].begin; i < groups[g].end; ++i) dom.points.push_back(cand[order[i]]);
    return dom;
}

// ---------------------------------------------------------------- mu_2

LatticePoint round_down(const Lambda& lam, const PlanePoint& w)
{
    const Rational inv(lam.q(), lam.p());
    return {(w.x * inv).floor(), (w.y * inv).floor()};
}

Rational measure_mu2(const Lambda& lam, const PlanePoint& w)
{
    const ReturnOrbit orbit = return_orbit_through(lam, round_down(lam, w));
    i64 good = 0;
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
        const LatticePoint pt = orbit.points[i];
        const LatticePoint image = i + 4 < orbit.points.size() ? orbit.points[i + 4] : f4(lam, pt);
        if (FieldVector{image.x - pt.x, image.y - pt.y} == w_box(box_of(lam, pt))) ++good;
    }
    return Rational(good, static_cast<i64>(orbit.points.size()));
}

} // namespace drot
