#include "ecopattern/kinetics.hpp"

#include <cmath>

namespace eco {

State clamp_state(const State& s) {
    if (!std::isfinite(s.u) || !std::isfinite(s.v))
        throw std::domain_error("state has non-finite component");
    State out = s;
    if (out.u < 0) {
        if (out.u < -kNegClamp) throw std::domain_error("state component below -1e-12");
        out.u = 0;
    }
    if (out.v < 0) {
        if (out.v < -kNegClamp) throw std::domain_error("state component below -1e-12");
        out.v = 0;
    }
    return out;
}

Vec2 reaction_rates(const Params& p, const State& s) {
    p.require_valid();
    const State c = clamp_state(s);
    return reaction_rates_raw(p, c.u, c.v);
}

// Derivatives of g(u) = u/(1+b u^2) up to order 5, via the Taylor series of
// the rational function around u: divide N(t) = u+t by
// D(t) = (1+b u^2) + 2bu t + b t^2 as formal power series; then
// g^(m) = m! * c_m.  Exact and free of cancellation-prone closed forms.
static void g_derivatives(double b, double u, double g[6]) {
    const double D0 = 1.0 + b * u * u;
    const double D1 = 2.0 * b * u;
    const double D2 = b;
    double c[6];
    c[0] = u / D0;
    c[1] = (1.0 - D1 * c[0]) / D0;
    c[2] = (-D1 * c[1] - D2 * c[0]) / D0;
    c[3] = (-D1 * c[2] - D2 * c[1]) / D0;
    c[4] = (-D1 * c[3] - D2 * c[2]) / D0;
    c[5] = (-D1 * c[4] - D2 * c[3]) / D0;
    static const double fact[6] = {1, 1, 2, 6, 24, 120};
    for (int m = 0; m < 6; ++m) g[m] = fact[m] * c[m];
}

// F1 = (u - u^2) - a v g(u) and F2 = e a v g(u) - f v - v^2 are linear in v
// apart from the -v^2 term, so only the n = 0 and n = 1 rows carry
// u-dependence; everything reduces to derivatives of g.
PartialTable partials_table(const Params& p, const State& s) {
    p.require_valid();
    const State c = clamp_state(s);
    double g[6];
    g_derivatives(p.b, c.u, g);

    PartialTable tab;
    for (int m = 0; m <= 5; ++m) {
        double logi = 0.0;  // d^m/du^m of (u - u^2)
        if (m == 0) logi = c.u * (1.0 - c.u);
        else if (m == 1) logi = 1.0 - 2.0 * c.u;
        else if (m == 2) logi = -2.0;
        tab.t[0][m][0] = logi - p.a * c.v * g[m];
        if (m <= 4) tab.t[0][m][1] = -p.a * g[m];

        tab.t[1][m][0] = p.e * p.a * c.v * g[m] - (m == 0 ? p.f * c.v + c.v * c.v : 0.0);
        if (m <= 4) tab.t[1][m][1] = p.e * p.a * g[m] - (m == 0 ? p.f + 2.0 * c.v : 0.0);
    }
    tab.t[1][0][2] = -2.0;
    return tab;
}

Jacobian2 jacobian(const Params& p, const State& s) {
    const PartialTable tab = partials_table(p, s);
    Jacobian2 j;
    j.a10 = tab.t[0][1][0];
    j.a01 = tab.t[0][0][1];
    j.b10 = tab.t[1][1][0];
    j.b01 = tab.t[1][0][1];
    return j;
}

PartialTensor partials(const Params& p, const State& s, int order) {
    if (order < 2 || order > 5) throw std::invalid_argument("partials: order must be in 2..5");
    const PartialTable tab = partials_table(p, s);
    PartialTensor out;
    out.order = order;
    for (int j = 0; j <= order; ++j) {
        out.f1[j] = tab.t[0][order - j][j];
        out.f2[j] = tab.t[1][order - j][j];
    }
    return out;
}

Vec2 apply_form(const PartialTable& tab, const Vec2* vs, int count) {
    if (count < 2 || count > 5) throw std::invalid_argument("apply_form: 2..5 vectors");
    // Iterate the 2^count component choices; the partial only depends on how
    // many v-slots were chosen, which keeps the loop trivially correct.
    Vec2 acc;
    const int total = 1 << count;
    for (int mask = 0; mask < total; ++mask) {
        double prod = 1.0;
        int n = 0;
        for (int i = 0; i < count; ++i) {
            if (mask & (1 << i)) {
                prod *= vs[i].y;
                ++n;
            } else {
                prod *= vs[i].x;
            }
        }
        acc.x += tab.t[0][count - n][n] * prod;
        acc.y += tab.t[1][count - n][n] * prod;
    }
    return acc;
}

double QuinticPoly::eval(double u) const {
    double r = 0.0;
    for (double c : coeff) r = r * u + c;
    return r;
}

double QuinticPoly::deriv(double u) const {
    double r = 0.0;
    for (int i = 0; i < 5; ++i) r = r * u + coeff[i] * (5 - i);
    return r;
}

double QuinticPoly::deriv2(double u) const {
    double r = 0.0;
    for (int i = 0; i < 4; ++i) r = r * u + coeff[i] * (5 - i) * (4 - i);
    return r;
}

QuinticPoly quintic_coefficients(const Params& p) {
    p.require_valid();
    QuinticPoly q;
    const double b2 = p.b * p.b;
    q.coeff = {b2,
               -b2,
               2.0 * p.b,
               -p.b * (p.a * p.f + 2.0),
               p.a * p.a * p.e + 1.0,
               -(p.a * p.f + 1.0)};
    return q;
}

double prey_nullcline(const Params& p, double u) {
    return (1.0 + p.b * u * u) * (1.0 - u) / p.a;
}

double predator_nullcline(const Params& p, double u) {
    return p.e * p.a * u / (1.0 + p.b * u * u) - p.f;
}

FeasibilityWindow feasibility_window(const Params& p) {
    FeasibilityWindow w;
    w.u_M = 1.0 / std::sqrt(p.b);
    const double disc = p.e * p.e * p.a * p.a - 4.0 * p.b * p.f * p.f;
    if (disc < 0) return w;
    const double root = std::sqrt(disc);
    w.u_a = (p.e * p.a - root) / (2.0 * p.b * p.f);
    w.u_b = (p.e * p.a + root) / (2.0 * p.b * p.f);
    w.empty = false;
    return w;
}

}  // namespace eco
