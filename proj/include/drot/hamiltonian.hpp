#pragma once

#include <vector>

#include "drot/arith.hpp"
#include "drot/types.hpp"

namespace drot {

// P(x) = floor(x)^2 + (2 floor(x) + 1) {x}
Rational p_affine(const Rational& x);
// Inverse of P on [0, inf).
Rational p_inverse(const Rational& a);
// floor(sqrt(a)) for a >= 0, exact.
i64 floor_sqrt(const Rational& a);

Rational hamiltonian_value(const PlanePoint& z);
// x^2 + y^2 (agrees with the Hamiltonian on Z^2).
Rational q_value(const PlanePoint& z);

enum class TraceMode { Canonical, Tolerant };

struct Polygon {
    Rational value;
    // Clockwise, starting after the crossing with the positive half of Fix G.
    std::vector<PlanePoint> vertices;
    // Box of the edge that leaves vertices[i].
    std::vector<BoxIndex> edge_boxes;
};

// Level set {P(x)+P(y) = a} traced along w.  Canonical mode refuses a
// critical a with CriticalValue; tolerant mode merges the lattice corners.
Polygon trace_polygon(const Rational& a, TraceMode mode = TraceMode::Canonical);

// floor(|u|) for the non-integer coordinate u of a vertex; -1 at lattice points.
i64 vertex_type(const PlanePoint& vertex);

struct PolygonClass {
    i64 e = 0;
    CriticalInterval interval;
    std::vector<i64> vertex_list; // v_1 .. v_k
    i64 k = 0;

    i64 v(std::size_t j) const; // 1-based, extended by v_j = v_{2k-j}
    i64 v1() const { return vertex_list.front(); }
    i64 vk() const { return vertex_list.back(); }
};

PolygonClass vertex_list(i64 e);

// q(e): lcm of (2v_1+1)^2 and of (2v+1)(2v'+1) over consecutive distinct types.
i64 class_modulus(const PolygonClass& cls);

// Number of sides of the level set at a: 4(2 floor(sqrt a)+1) - r(a).
i64 sides_count(const Rational& a);

// Lattice points on the circle x^2 + y^2 = e.
std::vector<LatticePoint> critical_circle_intersection(i64 e);

} // namespace drot
