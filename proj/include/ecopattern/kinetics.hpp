#ifndef ECOPATTERN_KINETICS_HPP
#define ECOPATTERN_KINETICS_HPP

#include <array>
#include <cstddef>

#include "ecopattern/params.hpp"

namespace eco {

// Reaction terms of the homogeneous system,
//   F1(u,v) = u(1-u) - a*u*v/(1+b*u^2)
//   F2(u,v) = e*a*u*v/(1+b*u^2) - f*v - v^2
// together with their exact partial derivatives up to fifth order.  The
// derivatives feed the linear analysis (order 1), the first Lyapunov
// coefficient (orders 2-3) and the quintic amplitude expansion (orders 2-5),
// so they are hand-derived closed forms rather than finite differences.

// States with components in [-kNegClamp, 0) are treated as exactly 0; more
// negative values are rejected.  PDE round-off is the only legitimate source
// of negativity.
inline constexpr double kNegClamp = 1e-12;

State clamp_state(const State& s);  // throws std::domain_error beyond -1e-12

// Raw evaluation without clamping or finiteness checks.  Used by the
// integrators, whose trial stages may leave the first quadrant slightly.
inline Vec2 reaction_rates_raw(const Params& p, double u, double v) {
    const double denom = 1.0 + p.b * u * u;
    const double pred = p.a * u * v / denom;
    return {u * (1.0 - u) - pred, p.e * pred - p.f * v - v * v};
}

// Checked evaluation per the public contract.
Vec2 reaction_rates(const Params& p, const State& s);

// Jacobian of (F1,F2) with the conventional entry names a10 = dF1/du,
// a01 = dF1/dv, b10 = dF2/du, b01 = dF2/dv.
struct Jacobian2 {
    double a10 = 0, a01 = 0, b10 = 0, b01 = 0;
    double trace() const { return a10 + b01; }
    double det() const { return a10 * b01 - a01 * b10; }
};
Jacobian2 jacobian(const Params& p, const State& s);

// Full table of mixed partials d^{m+n} F_i / du^m dv^n for m+n <= 5.
// comp 0 selects F1, comp 1 selects F2.
struct PartialTable {
    double t[2][6][6] = {};
    double get(int comp, int m, int n) const { return t[comp][m][n]; }
};
PartialTable partials_table(const Params& p, const State& s);

// The order-k slice of the table (k in 2..5), exposed as the k+1 distinct
// entries per component: entry j holds the partial with j derivatives in v.
struct PartialTensor {
    int order = 2;
    std::array<double, 6> f1 = {};  // f1[j] = d^order F1 / du^(order-j) dv^j
    std::array<double, 6> f2 = {};
};
PartialTensor partials(const Params& p, const State& s, int order);

// Applies the symmetric multilinear derivative form of order len(vs) to the
// given vectors: result_i = sum over index choices of the matching partial of
// F_i times the product of the chosen vector components.  len(vs) in 2..5.
Vec2 apply_form(const PartialTable& tab, const Vec2* vs, int count);
inline Vec2 apply_form2(const PartialTable& tab, const Vec2& x, const Vec2& y) {
    const Vec2 vs[2] = {x, y};
    return apply_form(tab, vs, 2);
}
inline Vec2 apply_form3(const PartialTable& tab, const Vec2& x, const Vec2& y, const Vec2& z) {
    const Vec2 vs[3] = {x, y, z};
    return apply_form(tab, vs, 3);
}

// Quintic whose positive roots below min(1, u_b) are the prey components of
// the coexisting equilibria:
//   Q(u) = b^2 u^5 - b^2 u^4 + 2b u^3 - b(af+2) u^2 + (a^2 e + 1) u - (af+1)
struct QuinticPoly {
    // coefficients ordered degree 5 down to 0
    std::array<double, 6> coeff = {};
    double eval(double u) const;
    double deriv(double u) const;   // Q'(u)
    double deriv2(double u) const;  // Q''(u)
};
QuinticPoly quintic_coefficients(const Params& p);

// Nullclines: prey n(u) = (1+b u^2)(1-u)/a and predator p(u) = e a u/(1+b u^2) - f.
double prey_nullcline(const Params& p, double u);
double predator_nullcline(const Params& p, double u);

// Feasibility window for coexistence: predator nullcline is positive on
// (u_a, u_b), with its peak at u_M = 1/sqrt(b).  Window empty when
// e^2 a^2 < 4 b f^2.
struct FeasibilityWindow {
    bool empty = true;
    double u_a = 0, u_b = 0, u_M = 0;
};
FeasibilityWindow feasibility_window(const Params& p);

}  // namespace eco

#endif
