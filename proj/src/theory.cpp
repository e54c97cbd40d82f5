#include "drot/theory.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "drot/parallel.hpp"

namespace drot {

namespace {

std::vector<i64> full_list(const PolygonClass& cls)
{
    std::vector<i64> out;
    for (std::size_t j = 1; j <= 2 * cls.vertex_list.size() - 1; ++j) out.push_back(cls.v(j));
    return out;
}

// Positions (0-based) of first occurrences, in order.
std::vector<std::size_t> first_occurrences(const std::vector<i64>& list, std::size_t upto)
{
    std::vector<std::size_t> out;
    std::set<i64> seen;
    for (std::size_t j = 0; j < upto; ++j)
        if (seen.insert(list[j]).second) out.push_back(j);
    return out;
}

} // namespace

LatticeLe lattice_for_class(const PolygonClass& cls)
{
    LatticeLe lat;
    lat.e = cls.e;
    lat.c = 2 * cls.v1() + 1;
    lat.q = class_modulus(cls);
    const std::vector<i64> v = full_list(cls);

    lat.q_seq.push_back(lat.c * lat.c);
    for (std::size_t j = 1; j < v.size(); ++j) {
        const i64 prev = lat.q_seq.back();
        lat.q_seq.push_back(v[j] == v[j - 1] ? prev : lcm((2 * v[j] + 1) * (2 * v[j - 1] + 1), prev));
    }
    for (std::size_t j = 1; j <= v.size(); ++j) {
        const std::vector<std::size_t> iota = first_occurrences(v, j);
        i64 qj = lat.c * lat.c;
        for (std::size_t i = 1; i < iota.size(); ++i)
            qj = lcm(qj, (2 * v[iota[i]] + 1) * (2 * v[iota[i - 1]] + 1));
        lat.q_closed.push_back(qj);
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (lat.q_seq[j] % (2 * v[j] + 1) != 0) throw std::logic_error("lattice_for_class: p_j is not integral");
        lat.p_seq.push_back(lat.q_seq[j] / (2 * v[j] + 1));
    }

    const i64 s = lat.q / lat.c;
    lat.L = {s, s};
    lat.gen2 = {(s - lat.c) / 2, (s + lat.c) / 2};
    return lat;
}

bool in_lattice(const LatticeLe& lat, LatticePoint d, std::size_t j)
{
    const i64 s = lat.modulus(j) / lat.c;
    const i64 u = d.x - d.y;
    const i64 v = d.x + d.y;
    if (u % lat.c != 0 || v % s != 0) return false;
    return mod(v / s + u / lat.c, 2) == 0;
}

ClassKey class_key(const LatticeLe& lat, LatticePoint z, std::size_t j)
{
    const i64 s = lat.modulus(j) / lat.c;
    const i64 u = z.x - z.y;
    const i64 v = z.x + z.y;
    const i64 shift = -floor_div(u, lat.c);
    return {mod(u, lat.c), mod(v - shift * s, 2 * s)};
}

bool coprimality_condition(const PolygonClass& cls)
{
    for (i64 vi : {cls.v1(), cls.vk()}) {
        bool ok = true;
        for (i64 vj : cls.vertex_list)
            if (vj != vi && gcd(2 * vi + 1, 2 * vj + 1) != 1) ok = false;
        if (ok) return true;
    }
    return false;
}

bool weak_coprimality_condition(const PolygonClass& cls)
{
    const LatticeLe lat = lattice_for_class(cls);
    const std::vector<std::size_t> iota = first_occurrences(cls.vertex_list, cls.vertex_list.size());
    for (std::size_t l = 1; l < iota.size(); ++l) {
        const i64 type = cls.vertex_list[iota[l]];
        if (gcd(2 * type + 1, lat.p_seq[iota[l - 1]]) != 1) return false;
    }
    return true;
}

bool is_symmetric_minimal_code(const OrbitCode& code, const PolygonClass& cls)
{
    if (code.sigma.size() < cls.vertex_list.size()) throw std::invalid_argument("is_symmetric_minimal_code: short code");
    const i64 s = cls.vk();
    const i64 sigma_k = code.sigma[cls.vertex_list.size() - 1];
    return code.sigma_minus1 == code.sigma[0] && mod(2 * sigma_k - s, 2 * s + 1) == 0;
}

// --------------------------------------------------------- equivariance

TheoremAReport verify_theorem_A(const RegularDomain& dom, const PhiOverride& phi)
{
    const LatticeLe lat = lattice_for_class(dom.cls);
    std::map<ClassKey, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < dom.points.size(); ++i) groups[class_key(lat, dom.points[i].z)].push_back(i);

    TheoremAReport rep;
    rep.e = dom.cls.e;
    rep.points = static_cast<i64>(dom.points.size());
    rep.classes = static_cast<i64>(groups.size());
    auto image = [&](const DomainPoint& d) { return phi ? phi(d) : d.phi; };
    for (const auto& [key, members] : groups) {
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const DomainPoint& p0 = dom.points[members[a]];
                const DomainPoint& p1 = dom.points[members[b]];
                ++rep.pairs;
                const LatticePoint defect = image(p1) - image(p0) - (p1.z - p0.z);
                if (defect.x + defect.y != 0 || defect.x % lat.c != 0) rep.violations.push_back({p0.z, p1.z, defect});
            }
        }
    }
    if (rep.pairs == 0)
        throw InsufficientPopulation("verify_theorem_A: no congruent pairs for e = " + std::to_string(dom.cls.e));
    return rep;
}

TheoremAReport verify_theorem_A(const Lambda& lam, const PolygonClass& cls)
{
    return verify_theorem_A(regular_domain(lam, cls.e));
}

// ---------------------------------------------------------- densities

DensityScan density_scan(RegularDomain dom)
{
    DensityScan scan;
    const Lambda lam(dom.lam);
    scan.lattice = lattice_for_class(dom.cls);
    scan.domain = std::move(dom);
    const RegularDomain& d = scan.domain;
    const PolygonClass& cls = d.cls;
    const i64 n = static_cast<i64>(d.points.size());
    if (n == 0) throw EmptyDomain("density_scan: empty regular domain");

    scan.codes.resize(d.points.size());
    parallel_for(d.points.size(), [&](std::size_t i) { scan.codes[i] = orbit_code(lam, d.points[i].z, cls); });

    CodeCensus& census = scan.census;
    census.e = cls.e;
    census.lam = d.lam;
    census.q = scan.lattice.q;
    std::set<ClassKey> conflicted;
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        const DomainPoint& pt = d.points[i];
        const bool direct = is_symmetric_minimal_direct(pt);
        const bool fixed = pt.phi == pt.z;
        const bool by_code = is_symmetric_minimal_code(scan.codes[i], cls);
        const bool by_fix_sets = fixed && pt.fix_hits == 2;
        if (direct) ++scan.symmetric;
        if (fixed) ++scan.fixed;
        if (by_code != direct) ++scan.prediction_mismatches;
        if (by_fix_sets != direct) ++scan.fix_set_mismatches;

        const ClassKey key = class_key(scan.lattice, pt.z);
        auto [it, fresh] = census.classes.try_emplace(key);
        ClassEntry& entry = it->second;
        if (fresh)
            entry.code = scan.codes[i];
        else if (!(entry.code == scan.codes[i]))
            conflicted.insert(key);
        ++entry.points;
        if (direct) ++entry.symmetric;
        if (fixed) ++entry.fixed;
    }
    census.code_conflicts = static_cast<i64>(conflicted.size());
    for (const auto& [key, entry] : census.classes) {
        if (entry.symmetric == entry.points) ++census.symmetric_classes;
        if (entry.fixed == entry.points) ++census.fixed_classes;
        if ((entry.symmetric != 0 && entry.symmetric != entry.points) || (entry.fixed != 0 && entry.fixed != entry.points))
            ++census.mixed_classes;
    }
    scan.delta = Rational(scan.symmetric, n);
    scan.eta = Rational(scan.fixed, n);
    scan.predicted = Rational(1, (2 * cls.v1() + 1) * (2 * cls.vk() + 1));
    return scan;
}

DensityScan density_scan(const Lambda& lam, i64 e)
{
    return density_scan(regular_domain(lam, e));
}

i64 count_codes(const DensityScan& scan)
{
    std::set<std::pair<i64, std::vector<i64>>> codes;
    for (const auto& [key, entry] : scan.census.classes) codes.insert({entry.code.sigma_minus1, entry.code.sigma});
    return static_cast<i64>(codes.size());
}

i64 count_codes(const Lambda& lam, i64 e)
{
    return count_codes(density_scan(lam, e));
}

i64 symmetric_classes_expected(const LatticeLe& lat, const PolygonClass& cls)
{
    return lat.q / ((2 * cls.v1() + 1) * (2 * cls.vk() + 1));
}

// ----------------------------------------------------------- cylinders

CylinderReport check_cylinders(const Lambda& lam, const DensityScan& scan, std::size_t max_points)
{
    (void)lam;
    const auto& pts = scan.domain.points;
    std::vector<std::size_t> pick;
    const std::size_t stride = std::max<std::size_t>(1, (pts.size() + max_points - 1) / std::max<std::size_t>(1, max_points));
    for (std::size_t i = 0; i < pts.size(); i += stride) pick.push_back(i);

    CylinderReport rep;
    const std::size_t len = scan.codes.empty() ? 0 : scan.codes.front().sigma.size();
    for (std::size_t a = 0; a < pick.size(); ++a) {
        for (std::size_t b = a + 1; b < pick.size(); ++b) {
            const OrbitCode& ca = scan.codes[pick[a]];
            const OrbitCode& cb = scan.codes[pick[b]];
            const LatticePoint dz = pts[pick[b]].z - pts[pick[a]].z;
            ++rep.pairs;
            bool prefix = ca.sigma_minus1 == cb.sigma_minus1;
            for (std::size_t j = 1; j <= len; ++j) {
                prefix = prefix && ca.sigma[j - 1] == cb.sigma[j - 1];
                const bool congruent = in_lattice(scan.lattice, dz, j);
                const VertexRecord& ra = ca.vertices[j];
                const VertexRecord& rb = cb.vertices[j];
                const LatticePoint dv = rb.point - ra.point;
                const i64 pj = scan.lattice.p_seq[j - 1];
                bool vertex_match = ra.integer_is_x == rb.integer_is_x;
                if (vertex_match) {
                    const i64 along_int = ra.integer_is_x ? dv.x : dv.y;
                    const i64 along_non = ra.integer_is_x ? dv.y : dv.x;
                    vertex_match = along_int == 0 && along_non % pj == 0;
                }
                ++rep.checks;
                if (prefix != congruent) ++rep.code_vs_lattice;
                if (congruent != vertex_match) ++rep.lattice_vs_vertex;
            }
        }
    }
    return rep;
}

bool UniformityReport::uniform() const
{
    if (!checked) return false;
    return std::all_of(sigma_k_counts.begin(), sigma_k_counts.end(), [&](i64 c) { return c == expected; });
}

UniformityReport census_uniformity(const DensityScan& scan)
{
    UniformityReport rep;
    const PolygonClass& cls = scan.domain.cls;
    rep.checked = scan.census.populated();
    rep.expected = symmetric_classes_expected(scan.lattice, cls);
    rep.sigma_k_counts.assign(static_cast<std::size_t>(2 * cls.vk() + 1), 0);
    const std::size_t k = cls.vertex_list.size();
    for (const auto& [key, entry] : scan.census.classes)
        if (entry.code.sigma_minus1 == entry.code.sigma[0]) ++rep.sigma_k_counts[static_cast<std::size_t>(entry.code.sigma[k - 1])];
    return rep;
}

} // namespace drot
