#pragma once

#include <optional>
#include <string>

#include "drot/arith.hpp"
#include "drot/types.hpp"

namespace drot {

// The parameter lambda = p/q, 0 < lambda < 2.
class Lambda {
public:
    explicit Lambda(Rational value);
    Lambda(i64 p, i64 q) : Lambda(Rational(p, q)) {}

    // "p/q", "1/N" or "2^-k".
    static Lambda parse(const std::string& text);

    const Rational& value() const { return value_; }
    i64 p() const { return value_.num(); }
    i64 q() const { return value_.den(); }

    // floor(lambda * x)
    i64 floor_mul(i64 x) const { return floor_div(p() * x, q()); }
    // ceil(n / lambda)
    i64 ceil_over(i64 n) const { return ceil_div(n * q(), p()); }

    // lambda_m = 1/(6(m+1))
    static Rational lambda_m(i64 m) { return Rational(1, 6 * (m + 1)); }
    bool small_enough(i64 m) const { return value_ < lambda_m(m); }

    // nu with lambda = 2 cos(2 pi nu)
    double rotation_number_approx() const;
    double t_star_approx() const;

    std::string str() const { return value_.str(); }

private:
    Rational value_;
};

LatticePoint f_apply(const Lambda& lam, LatticePoint z);
LatticePoint f_inverse(const Lambda& lam, LatticePoint z);
// F^k for any integer k.
LatticePoint f_power(const Lambda& lam, LatticePoint z, i64 k);
LatticePoint f4(const Lambda& lam, LatticePoint z);
LatticePoint f4_inverse(const Lambda& lam, LatticePoint z);

inline LatticePoint reversor_g(LatticePoint z) { return {z.y, z.x}; }
inline bool fix_g(LatticePoint z) { return z.x == z.y; }

LatticePoint reversor_h(const Lambda& lam, LatticePoint z);
bool fix_h(const Lambda& lam, LatticePoint z);
// The piece of Fix H a symmetric orbit of class e runs through:
// 2x = floor(lambda y) = floor(sqrt e) when floor(sqrt e) is even,
// 2x = floor(lambda y) = -(floor(sqrt e)+1) when it is odd.
bool in_h_segment(const Lambda& lam, LatticePoint z, i64 e);

BoxIndex box_of(const Lambda& lam, LatticePoint z);

// w on box (m,n): (2n+1, -(2m+1)).
FieldVector w_box(BoxIndex b);
FieldVector w_field(const PlanePoint& point);

// v(z) = F^4(z) - z with the labels of the four boxes visited:
// m = floor(lambda x), a+1 = ceil(lambda (y-m)), b+1 = ceil(lambda (x+a+1)),
// c = floor(lambda (y-m-b-1)), d = floor(lambda (x+a+c+1)).
struct FieldLabels {
    i64 m = 0;
    i64 a = 0;
    i64 b = 0;
    i64 c = 0;
    i64 d = 0;
    FieldVector v;
};

FieldLabels v_labels(const Lambda& lam, LatticePoint z);
FieldVector v_field(const Lambda& lam, LatticePoint z);

// z in Lambda: F^4(z) lies in another box.
bool is_transition_point(const Lambda& lam, LatticePoint z);
// z in Lambda_{m,n}: z in Lambda and F^4(z) in box target.
bool in_lambda_mn(const Lambda& lam, LatticePoint z, BoxIndex target);

bool in_sigma(const Lambda& lam, LatticePoint z);

// Minimal period, or nullopt once cap iterations pass without return.
std::optional<i64> orbit_period(const Lambda& lam, LatticePoint z, i64 cap);
// lambda T / pi
double normalised_period(const Lambda& lam, i64 period);

// A(r, lambda) = { z : ||lambda z||_inf < r }, strict.  Counts the points
// where v(z) = w(lambda z).
struct Mu1 {
    i64 total = 0;
    i64 regular = 0;
    Rational value() const { return Rational(regular, total); }
};
Mu1 measure_mu1(const Lambda& lam, const Rational& r);

} // namespace drot
