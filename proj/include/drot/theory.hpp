#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "drot/hamiltonian.hpp"
#include "drot/lattice_map.hpp"
#include "drot/return_dynamics.hpp"

namespace drot {

// The translation lattice L^e (unscaled) and its nested refinements L^e_j.
struct LatticeLe {
    i64 e = 0;
    i64 q = 0;
    i64 c = 0;                  // 2 v_1 + 1
    LatticePoint L;             // (q/c) (1,1)
    LatticePoint gen2;          // (L - w_{v1,v1}) / 2
    std::vector<i64> q_seq;     // q_1 .. q_{2k-1}, by the recursion
    std::vector<i64> q_closed;  // the same from the closed form
    std::vector<i64> p_seq;     // p_j = q_j / (2 v_j + 1)

    // q_j for j = 1 .. 2k-1; j = 0 stands for q itself.
    i64 modulus(std::size_t j = 0) const { return j == 0 ? q : q_seq.at(j - 1); }
};

LatticeLe lattice_for_class(const PolygonClass& cls);

// d in L^e_j (j = 0: L^e).
bool in_lattice(const LatticeLe& lat, LatticePoint d, std::size_t j = 0);

// Normal form of z modulo L^e_j: (x-y) mod c and the remaining coordinate
// along L after removing whole copies of gen2.  Equal keys <=> congruent.
using ClassKey = std::pair<i64, i64>;
ClassKey class_key(const LatticeLe& lat, LatticePoint z, std::size_t j = 0);

// Some i in {1,k} with 2v_i+1 coprime to every other distinct 2v_j+1.
bool coprimality_condition(const PolygonClass& cls);
// gcd(2 v_iota(l) + 1, p_iota(l-1)) = 1 for every new type after the first.
bool weak_coprimality_condition(const PolygonClass& cls);

// sigma_-1 = sigma_1 and 2 sigma_k = floor(sqrt e) mod 2 floor(sqrt e)+1.
bool is_symmetric_minimal_code(const OrbitCode& code, const PolygonClass& cls);

// Symmetric minimal by simulation: Phi(z) = z and G(z) on the orbit.
inline bool is_symmetric_minimal_direct(const DomainPoint& d)
{
    return d.phi == d.z && d.meets_g_image;
}

struct TheoremAViolation {
    LatticePoint z, z2;
    LatticePoint defect;        // Phi(z2) - Phi(z) - (z2 - z)
};

struct TheoremAReport {
    i64 e = 0;
    i64 points = 0;
    i64 classes = 0;
    i64 pairs = 0;
    std::vector<TheoremAViolation> violations;
};

using PhiOverride = std::function<LatticePoint(const DomainPoint&)>;

// Phi(z + l) = Phi(z) + l mod w_{v1,v1} for every pair z, z+l in the
// regular domain with l in L^e.  Throws InsufficientPopulation without pairs.
TheoremAReport verify_theorem_A(const Lambda& lam, const PolygonClass& cls);
TheoremAReport verify_theorem_A(const RegularDomain& dom, const PhiOverride& phi = {});

struct ClassEntry {
    OrbitCode code;
    i64 points = 0;
    i64 symmetric = 0;          // points found symmetric minimal by simulation
    i64 fixed = 0;              // points with Phi(z) = z
};

struct CodeCensus {
    i64 e = 0;
    Rational lam;
    i64 q = 0;
    std::map<ClassKey, ClassEntry> classes;
    i64 symmetric_classes = 0;  // classes made of symmetric minimal points
    i64 fixed_classes = 0;
    i64 mixed_classes = 0;      // classes whose points disagree
    i64 code_conflicts = 0;     // classes holding more than one code
    bool populated() const { return static_cast<i64>(classes.size()) == q; }
};

struct DensityScan {
    RegularDomain domain;
    LatticeLe lattice;
    std::vector<OrbitCode> codes;   // parallel to domain.points
    Rational delta;
    Rational eta;
    Rational predicted;             // 1/((2v_1+1)(2v_k+1))
    i64 symmetric = 0;
    i64 fixed = 0;
    i64 prediction_mismatches = 0;  // code prediction vs simulation
    i64 fix_set_mismatches = 0;     // two-point Fix G u Fix H test vs simulation
    CodeCensus census;
};

DensityScan density_scan(const Lambda& lam, i64 e);
DensityScan density_scan(RegularDomain dom);

// Distinct orbit codes over one representative per class of L^e.
i64 count_codes(const Lambda& lam, i64 e);
i64 count_codes(const DensityScan& scan);

// n_k = q / ((2v_1+1)(2v_k+1))
i64 symmetric_classes_expected(const LatticeLe& lat, const PolygonClass& cls);

struct CylinderReport {
    i64 pairs = 0;
    i64 checks = 0;
    i64 code_vs_lattice = 0;    // (i) and (ii) disagree
    i64 lattice_vs_vertex = 0;  // (ii) and (iii) disagree
};

// The three-way cylinder-set equivalence on all pairs among up to
// max_points points of the scan.
CylinderReport check_cylinders(const Lambda& lam, const DensityScan& scan, std::size_t max_points = 400);

struct UniformityReport {
    bool checked = false;
    i64 expected = 0;                 // n_k
    std::vector<i64> sigma_k_counts;  // over classes with sigma_-1 = sigma_1
    bool uniform() const;
};

UniformityReport census_uniformity(const DensityScan& scan);

} // namespace drot
