#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "drot/hamiltonian.hpp"
#include "drot/lattice_map.hpp"

namespace drot {

// Default iteration bound for return orbits: 10 t*.
i64 default_return_cap(const Lambda& lam);

// z in X: closer to Fix G than its F^4 image (weakly) and its F^-4
// pre-image (strictly).  Points outside the closed first quadrant are not in X.
bool in_return_domain(const Lambda& lam, LatticePoint z);

// q * P(lambda x) + q * P(lambda y), an integer.
i64 scaled_hamiltonian(const Lambda& lam, LatticePoint z);
Rational hamiltonian_at(const Lambda& lam, LatticePoint z);

struct ReturnOrbit {
    LatticePoint seed;
    // F^k(seed) for k = -tau_minus .. tau; the first and last lie in X.
    std::vector<LatticePoint> points;
    i64 tau = 0;
    i64 tau_minus = 0;
    // Indices into points of the transition points (points in Lambda).
    std::vector<std::size_t> vertices;

    LatticePoint phi() const { return points.back(); }
};

// Phi(z) = F^tau(z) for z in X, by plain iteration.
ReturnOrbit return_map(const Lambda& lam, LatticePoint z, i64 cap = 0);
// Return orbit through an arbitrary z != 0: back to X, then forward to X.
ReturnOrbit return_orbit_through(const Lambda& lam, LatticePoint z, i64 cap = 0);

struct StripStep {
    LatticePoint psi;
    i64 t = 0;
};

// Next landing in Lambda under F^4, in closed form along the field of
// each box.  Requires z != 0.
StripStep strip_map(const Lambda& lam, LatticePoint z);
// The same by plain iteration of F^4.
StripStep strip_map_iterated(const Lambda& lam, LatticePoint z);
// Last landing in Lambda under F^-4 (t >= 1 steps back).
StripStep strip_map_inverse(const Lambda& lam, LatticePoint z);

struct VertexRecord {
    int j = 0;                // -1, 1, ..., 2k-1
    LatticePoint point;       // Psi^j(z)
    BoxIndex box;             // target box: point is in Lambda_{m,n}
    bool integer_is_x = false;
    LatticePoint offset;      // (x_j, y_j) against ceil(line/lambda) bases
    i64 type = 0;             // v_j
    i64 sigma = 0;
    i64 gamma = 0;
    i64 epsilon = 0;          // kick along the non-integer coordinate
    i64 transit = 0;          // t(Psi^j(z)) to the next vertex
};

struct OrbitCode {
    i64 sigma_minus1 = 0;
    std::vector<i64> sigma;   // sigma_1 .. sigma_{2k-1}
    std::vector<i64> gamma;   // gamma_1 .. gamma_{2k-1}
    std::vector<VertexRecord> vertices; // j = -1 first

    friend bool operator==(const OrbitCode& a, const OrbitCode& b)
    {
        return a.sigma_minus1 == b.sigma_minus1 && a.sigma == b.sigma;
    }
};

// Orbit code of z in the regular domain of cls.  Throws NotRegular if the
// strip walk does not meet vertices of the class types or crosses a corner.
OrbitCode orbit_code(const Lambda& lam, LatticePoint z, const PolygonClass& cls);

// Summary of one brute-force return orbit, used for regularity.
struct OrbitScan {
    bool completed = false;   // reached X within the cap
    bool in_x = false;
    bool off_lambda = false;  // z not in Lambda
    bool in_box = false;      // z in B_{v1,v1}
    bool avoids_sigma = true;
    bool stays_in_class = true;
    LatticePoint phi;
    i64 tau = 0;
    bool meets_g_image = false; // G(z) on the orbit
    i64 fix_hits = 0;         // orbit points in Fix G or Fix H (one period, if closed)

    bool regular() const
    {
        return completed && in_x && off_lambda && in_box && avoids_sigma && stays_in_class;
    }
};

OrbitScan scan_return_orbit(const Lambda& lam, LatticePoint z, const PolygonClass& cls, i64 cap = 0);

struct DomainPoint {
    LatticePoint z;
    i64 value = 0;            // q * P(lambda z)
    LatticePoint phi;
    i64 tau = 0;
    bool meets_g_image = false;
    i64 fix_hits = 0;
};

struct RegularDomain {
    Rational lam;
    PolygonClass cls;
    Rational lo;              // the open interval selected inside I^e
    Rational hi;
    bool tie = false;         // another run of equal length existed
    i64 candidates = 0;
    i64 irregular = 0;
    std::vector<DomainPoint> points;
};

// Candidates -(2v1+1) <= x-y < 2v1+1 with P in I^e; the regular domain is
// the longest run of P-values (open, between irregular values) that holds
// only regular points.  Throws EmptyDomain when nothing is regular.
RegularDomain regular_domain(const Lambda& lam, i64 e, i64 cap = 0);

// R_lambda(w): coordinatewise floor of w / lambda.
LatticePoint round_down(const Lambda& lam, const PlanePoint& w);

// Fraction of the return orbit through R_lambda(w) where v = w.
Rational measure_mu2(const Lambda& lam, const PlanePoint& w);

using BigRational = boost::multiprecision::cpp_rational;

struct ShadowDistance {
    BigRational squared;      // exact d_H^2 in scaled coordinates
    double value = 0.0;
    std::size_t orbit_points = 0;
    std::size_t polygon_vertices = 0;
};

// Hausdorff distance between the polygon through w and the return orbit
// through R_lambda(w), both directed parts computed exactly.
ShadowDistance hausdorff_shadowing(const Lambda& lam, const PlanePoint& w);

} // namespace drot
