#include "commands.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "drot/errors.hpp"
#include "drot/hamiltonian.hpp"
#include "drot/parallel.hpp"
#include "drot/return_dynamics.hpp"
#include "drot/theory.hpp"

namespace drot::cli {

using nlohmann::json;

namespace {

constexpr i64 kOrbitCap = 10'000'000;
constexpr i64 kScanCap = 100'000'000;

std::string dec(double v)
{
    std::ostringstream s;
    s.precision(12);
    s << v;
    return s.str();
}

std::string dec(const Rational& r) { return dec(r.to_double()); }

// One CSV row; none of our fields contain commas or quotes.
class Csv {
public:
    explicit Csv(std::ostream& os) : os_(os) {}
    template <class... T>
    void row(const T&... fields)
    {
        bool first = true;
        ((os_ << (first ? "" : ",") << fields, first = false), ...);
        os_ << '\n';
    }

private:
    std::ostream& os_;
};

const Lambda& need_lambda(const RunConfig& cfg)
{
    if (!cfg.lambda) throw std::invalid_argument("--lambda is required");
    return *cfg.lambda;
}

std::vector<i64> class_range(const RunConfig& cfg)
{
    if (cfg.e) {
        if (!is_critical(*cfg.e)) throw std::invalid_argument("--e must be a sum of two squares");
        return {*cfg.e};
    }
    if (!cfg.e_max) throw std::invalid_argument("--e or --e-max is required");
    return critical_numbers_up_to(*cfg.e_max);
}

std::string join(const std::vector<i64>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

} // namespace

std::pair<i64, i64> parse_pair(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("expected x,y: " + text);
    std::size_t used = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const i64 x = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument("expected x,y: " + text);
    const i64 y = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument("expected x,y: " + text);
    return {x, y};
}

int cmd_orbit(const RunConfig& cfg, std::ostream& os)
{
    const Lambda& lam = need_lambda(cfg);
    if (!cfg.seed) throw std::invalid_argument("--seed is required");
    const i64 cap = cfg.cap > 0 ? cfg.cap : kOrbitCap;
    const LatticePoint z0 = *cfg.seed;

    std::vector<LatticePoint> pts{z0};
    LatticePoint z = f_apply(lam, z0);
    while (!(z == z0) && static_cast<i64>(pts.size()) < cap) {
        pts.push_back(z);
        z = f_apply(lam, z);
    }
    const bool closed = z == z0;
    const i64 period = static_cast<i64>(pts.size());

    if (cfg.format == Format::Json) {
        json j;
        j["lambda"] = lam.str();
        j["seed"] = {z0.x, z0.y};
        j["complete"] = closed;
        j["period"] = closed ? json(period) : json(nullptr);
        j["normalised_period"] = closed ? json(normalised_period(lam, period)) : json(nullptr);
        json rows = json::array();
        for (const LatticePoint& p : pts) rows.push_back({p.x, p.y});
        j["points"] = rows;
        os << j.dump(2) << '\n';
    } else {
        Csv csv(os);
        csv.row("step", "x", "y", "scaled_x", "scaled_x_decimal", "scaled_y", "scaled_y_decimal", "status");
        const char* status = closed ? "ok" : "exceeded";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Rational sx = lam.value() * Rational(pts[i].x);
            const Rational sy = lam.value() * Rational(pts[i].y);
            csv.row(i, pts[i].x, pts[i].y, sx.str(), dec(sx), sy.str(), dec(sy), status);
        }
    }
    if (closed)
        std::cerr << "period " << period << ", normalised " << normalised_period(lam, period) << '\n';
    else
        std::cerr << "no return within " << cap << " iterations\n";
    return closed ? 0 : 3;
}

int cmd_period_scan(const RunConfig& cfg, std::ostream& os)
{
    const Lambda& lam = need_lambda(cfg);
    if (!cfg.window) throw std::invalid_argument("--window lo,hi is required");
    const i64 cap = cfg.cap > 0 ? cfg.cap : kScanCap;
    const auto [lo, hi] = *cfg.window;
    const std::size_t n = hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;

    std::vector<std::optional<i64>> periods(n);
    parallel_for(n, [&](std::size_t i) {
        const i64 x = lo + static_cast<i64>(i);
        periods[i] = orbit_period(lam, {x, x}, cap);
    });

    json rows = json::array();
    Csv csv(os);
    if (cfg.format == Format::Csv)
        csv.row("x", "scaled_x", "hamiltonian", "hamiltonian_decimal", "period", "normalised_period", "status", "critical");
    std::optional<Rational> prev;
    for (std::size_t i = 0; i < n; ++i) {
        const i64 x = lo + static_cast<i64>(i);
        const Rational sx = lam.value() * Rational(x);
        const Rational value = hamiltonian_value({sx, sx});
        // critical number crossed since the previous row
        std::string marker;
        if (prev) {
            const Rational a = std::min(*prev, value);
            const Rational b = std::max(*prev, value);
            for (i64 e = std::max<i64>(0, a.floor()); Rational(e) <= b; ++e)
                if (Rational(e) > a && is_critical(e)) marker = std::to_string(e);
        }
        prev = value;
        const bool ok = periods[i].has_value();
        const std::string period = ok ? std::to_string(*periods[i]) : "";
        const std::string norm = ok ? dec(normalised_period(lam, *periods[i])) : "";
        if (cfg.format == Format::Json)
            rows.push_back({{"x", x}, {"hamiltonian", value.str()}, {"period", ok ? json(*periods[i]) : json(nullptr)},
                            {"normalised_period", ok ? json(normalised_period(lam, *periods[i])) : json(nullptr)},
                            {"status", ok ? "ok" : "exceeded"}, {"critical", marker}});
        else
            csv.row(x, sx.str(), value.str(), dec(value), period, norm, ok ? "ok" : "exceeded", marker);
    }
    if (cfg.format == Format::Json) os << rows.dump(2) << '\n';
    return 0;
}

int cmd_polygon(const RunConfig& cfg, std::ostream& os)
{
    Polygon poly;
    if (cfg.value) {
        const Rational a = *cfg.value;
        const bool critical = a.is_integer() && is_critical(a.num());
        poly = trace_polygon(a, critical ? TraceMode::Tolerant : TraceMode::Canonical);
    } else if (cfg.e) {
        if (!is_critical(*cfg.e)) throw std::invalid_argument("--e must be a sum of two squares");
        const CriticalInterval iv = critical_interval(*cfg.e);
        poly = trace_polygon(Rational(iv.lo + iv.hi, 2));
    } else {
        throw std::invalid_argument("--e or --value is required");
    }
    if (cfg.format == Format::Json) {
        json j;
        j["value"] = poly.value.str();
        json verts = json::array();
        for (const PlanePoint& v : poly.vertices) verts.push_back({{"x", v.x.str()}, {"y", v.y.str()}, {"type", vertex_type(v)}});
        j["vertices"] = verts;
        os << j.dump(2) << '\n';
        return 0;
    }
    Csv csv(os);
    csv.row("index", "x", "x_decimal", "y", "y_decimal", "type", "edge_box_m", "edge_box_n");
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        const PlanePoint& v = poly.vertices[i];
        csv.row(i, v.x.str(), dec(v.x), v.y.str(), dec(v.y), vertex_type(v), poly.edge_boxes[i].m, poly.edge_boxes[i].n);
    }
    return 0;
}

int cmd_vertex_list(const RunConfig& cfg, std::ostream& os)
{
    const std::vector<i64> es = class_range(cfg);
    json rows = json::array();
    Csv csv(os);
    if (cfg.format == Format::Csv) csv.row("e", "next", "k", "v1", "vk", "vertex_list", "q", "coprime", "weak_coprime");
    for (i64 e : es) {
        const PolygonClass cls = vertex_list(e);
        const i64 q = class_modulus(cls);
        const bool cop = coprimality_condition(cls);
        const bool weak = weak_coprimality_condition(cls);
        if (cfg.format == Format::Json)
            rows.push_back({{"e", e}, {"next", cls.interval.hi}, {"k", cls.k}, {"vertex_list", cls.vertex_list}, {"q", q},
                            {"coprime", cop}, {"weak_coprime", weak}});
        else
            csv.row(e, cls.interval.hi, cls.k, cls.v1(), cls.vk(), join(cls.vertex_list), q, int(cop), int(weak));
    }
    if (cfg.format == Format::Json) os << rows.dump(2) << '\n';
    return 0;
}

int cmd_critical_numbers(const RunConfig& cfg, std::ostream& os)
{
    if (!cfg.e_max) throw std::invalid_argument("--e-max is required");
    const std::vector<i64> es = critical_numbers_up_to(*cfg.e_max);
    if (cfg.format == Format::Json) {
        json j;
        j["count"] = es.size();
        j["critical_numbers"] = es;
        if (*cfg.e_max >= 2) j["landau_ramanujan_ratio"] = landau_ramanujan_ratio(*cfg.e_max);
        os << j.dump(2) << '\n';
        return 0;
    }
    Csv csv(os);
    csv.row("index", "e", "r");
    for (std::size_t i = 0; i < es.size(); ++i) csv.row(i + 1, es[i], r_two_squares(es[i]));
    return 0;
}

int cmd_density(const RunConfig& cfg, std::ostream& os)
{
    const Lambda& lam = need_lambda(cfg);
    std::vector<i64> es = class_range(cfg);
    es.erase(std::remove(es.begin(), es.end(), i64{0}), es.end());

    json rows = json::array();
    Csv csv(os);
    if (cfg.format == Format::Csv)
        csv.row("e", "v1", "vk", "q", "points", "classes", "populated", "delta", "delta_decimal", "predicted", "predicted_decimal",
                "eta", "eta_decimal", "deviation_over_lambda", "symmetric_classes", "expected_symmetric_classes", "coprime", "status");
    for (i64 e : es) {
        const PolygonClass cls = vertex_list(e);
        const bool cop = coprimality_condition(cls);
        const Rational predicted(1, (2 * cls.v1() + 1) * (2 * cls.vk() + 1));
        try {
            const DensityScan sc = density_scan(lam, e);
            const double dev = ((sc.delta - sc.predicted) / lam.value()).to_double();
            const i64 expected = symmetric_classes_expected(sc.lattice, cls);
            if (cfg.format == Format::Json)
                rows.push_back({{"e", e}, {"q", sc.lattice.q}, {"points", sc.domain.points.size()},
                                {"classes", sc.census.classes.size()}, {"populated", sc.census.populated()},
                                {"delta", sc.delta.str()}, {"predicted", predicted.str()}, {"eta", sc.eta.str()},
                                {"deviation_over_lambda", dev}, {"symmetric_classes", sc.census.symmetric_classes},
                                {"expected_symmetric_classes", expected}, {"coprime", cop}, {"status", "ok"}});
            else
                csv.row(e, cls.v1(), cls.vk(), sc.lattice.q, sc.domain.points.size(), sc.census.classes.size(),
                        int(sc.census.populated()), sc.delta.str(), dec(sc.delta), predicted.str(), dec(predicted),
                        sc.eta.str(), dec(sc.eta), dec(dev), sc.census.symmetric_classes, expected, int(cop), "ok");
        } catch (const EmptyDomain&) {
            if (cfg.format == Format::Json)
                rows.push_back({{"e", e}, {"predicted", predicted.str()}, {"coprime", cop}, {"status", "empty"}});
            else
                csv.row(e, cls.v1(), cls.vk(), class_modulus(cls), 0, 0, 0, "", "", predicted.str(), dec(predicted), "", "", "",
                        "", "", int(cop), "empty");
        }
    }
    if (cfg.format == Format::Json) os << rows.dump(2) << '\n';
    return 0;
}

i64 transition_window_counterexamples(const Lambda& lam, i64 r)
{
    // |lambda x| < r  <=>  |x| < r q / p
    const i64 bound = ceil_div(r * lam.q(), lam.p()) - 1;
    const std::size_t rows = static_cast<std::size_t>(2 * bound + 1);
    std::vector<i64> bad(rows, 0);
    parallel_for(rows, [&](std::size_t i) {
        const i64 x = -bound + static_cast<i64>(i);
        for (i64 y = -bound; y <= bound; ++y) {
            const LatticePoint z{x, y};
            if (z == LatticePoint{0, 0}) continue;
            const FieldVector v = v_field(lam, z);
            const FieldVector w = w_box(box_of(lam, z));
            if ((v.dx != w.dx || v.dy != w.dy) && !is_transition_point(lam, z)) ++bad[i];
        }
    });
    i64 total = 0;
    for (i64 b : bad) total += b;
    return total;
}

int cmd_verify(const RunConfig& cfg, std::ostream& os)
{
    const Lambda lam = cfg.lambda ? *cfg.lambda : Lambda(1, 500);
    std::vector<i64> es{1, 2, 4, 5, 9, 10};
    if (cfg.e) es = {*cfg.e};
    json report = json::array();
    bool all = true;
    auto add = [&](const std::string& check, json params, json expected, json observed, bool pass) {
        report.push_back({{"check", check}, {"params", std::move(params)}, {"expected", std::move(expected)},
                          {"observed", std::move(observed)}, {"pass", pass}});
        all = all && pass;
    };

    for (i64 e : es) {
        json params = {{"lambda", lam.str()}, {"e", e}};
        try {
            const RegularDomain dom = regular_domain(lam, e);
            PhiOverride phi;
            if (cfg.corrupt) {
                // off by one at a single point that has a congruent partner
                const LatticeLe lat = lattice_for_class(dom.cls);
                std::map<ClassKey, int> seen;
                for (const DomainPoint& d : dom.points) ++seen[class_key(lat, d.z)];
                LatticePoint target = dom.points.front().z;
                for (const DomainPoint& d : dom.points)
                    if (seen[class_key(lat, d.z)] > 1) {
                        target = d.z;
                        break;
                    }
                phi = [target](const DomainPoint& d) { return d.z == target ? d.phi + FieldVector{1, 0} : d.phi; };
            }
            const TheoremAReport rep = verify_theorem_A(dom, phi);
            if (cfg.corrupt) params["corrupted"] = true;
            add("equivariance", params, 0, {{"violations", rep.violations.size()}, {"pairs", rep.pairs}},
                rep.violations.empty());
        } catch (const Error& ex) {
            add("equivariance", params, 0, {{"error", ex.what()}}, false);
        }
    }

    {
        std::mt19937_64 rng(20240601);
        std::uniform_int_distribution<i64> coord(-3000, 3000);
        i64 mismatches = 0;
        const int trials = 10000;
        for (int i = 0; i < trials; ++i) {
            LatticePoint z{coord(rng), coord(rng)};
            if (z == LatticePoint{0, 0}) z = {1, 0};
            const StripStep a = strip_map(lam, z);
            const StripStep b = strip_map_iterated(lam, z);
            if (!(a.psi == b.psi) || a.t != b.t) ++mismatches;
        }
        add("strip_map_oracle", {{"lambda", lam.str()}, {"points", trials}}, 0, mismatches, mismatches == 0);
    }

    {
        // lambda < 1/(2 ceil(r) + 3)
        i64 r = 1;
        while (lam.value() < Rational(1, 2 * (r + 1) + 3) && r < 4) ++r;
        json params = {{"lambda", lam.str()}, {"r", r}};
        if (lam.value() < Rational(1, 2 * r + 3)) {
            const i64 bad = transition_window_counterexamples(lam, r);
            add("transition_window", params, 0, bad, bad == 0);
        } else {
            add("transition_window", params, 0, "lambda too large for r = 1", false);
        }
    }

    {
        const std::vector<std::pair<i64, std::vector<i64>>> table{
            {9, {2, 2, 0, 3}},          {10, {2, 1, 3, 3}},          {18, {3, 3, 1, 4, 4}},
            {29, {3, 4, 2, 5, 5, 5}},   {49, {4, 5, 3, 6, 6, 6, 0, 7}}, {52, {5, 4, 6, 6, 6, 1, 7, 7}}};
        for (const auto& [e, want] : table) {
            const std::vector<i64> got = vertex_list(e).vertex_list;
            add("vertex_table", {{"e", e}}, want, got, got == want);
        }
    }

    if (cfg.format == Format::Csv) {
        Csv csv(os);
        csv.row("check", "params", "expected", "observed", "pass");
        for (const json& r : report) {
            auto flat = [](const json& j) {
                std::string s = j.dump();
                std::replace(s.begin(), s.end(), ',', ';');
                return s;
            };
            csv.row(r["check"].get<std::string>(), flat(r["params"]), flat(r["expected"]), flat(r["observed"]),
                    r["pass"].get<bool>() ? "true" : "false");
        }
    } else {
        os << report.dump(2) << '\n';
    }
    return all ? 0 : 1;
}

} // namespace drot::cli
