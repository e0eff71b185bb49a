#include "ecopattern/bifurcation.hpp"

#include "ecopattern/attractor.hpp"
#include "ecopattern/kinetics.hpp"
#include "ecopattern/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eco {

namespace {

std::optional<Equilibrium> first_interior(const Params& p) {
    auto in = find_equilibria(p).interior();
    if (in.empty()) return std::nullopt;
    return in.front();
}

Params with_control(Params p, const std::string& control, double value) {
    if (control == "f")
        p.f = value;
    else if (control == "b")
        p.b = value;
    else
        throw std::invalid_argument("control must be 'f' or 'b'");
    return p;
}

// --- saddle-node elimination -------------------------------------------------
// The double-root system Q(u)=Q'(u)=0 is linear in f, so f can be eliminated:
// each equation yields f as an explicit function of u, and a double root is a
// zero of their difference.

double f_from_Q(const Params& p, double u) {
    const double b = p.b, a = p.a;
    const double num = b * b * std::pow(u, 5) - b * b * std::pow(u, 4) + 2 * b * u * u * u -
                       2 * b * u * u + (a * a * p.e + 1) * u - 1;
    return num / (a * (b * u * u + 1));
}

double f_from_Qprime(const Params& p, double u) {
    const double b = p.b, a = p.a;
    const double num = 5 * b * b * std::pow(u, 4) - 4 * b * b * u * u * u + 6 * b * u * u -
                       4 * b * u + a * a * p.e + 1;
    return num / (2 * a * b * u);
}

// Validate a candidate double root (control value already substituted into q)
// and package it; nullopt if infeasible.
std::optional<ThresholdResult> check_double_root(const Params& q, const std::string& control,
                                                 double value, double u_sn) {
    if (!std::isfinite(value) || value <= 0) return std::nullopt;
    if (!(u_sn > 0) || u_sn >= 1.0) return std::nullopt;
    const double v_sn = predator_nullcline(q, u_sn);
    if (!(v_sn > 1e-12)) return std::nullopt;
    const QuinticPoly quintic = quintic_coefficients(q);
    if (std::abs(quintic.eval(u_sn)) > 1e-9 || std::abs(quintic.deriv(u_sn)) > 1e-9)
        return std::nullopt;
    const FeasibilityWindow w = feasibility_window(q);
    if (w.empty || u_sn >= std::min(1.0, w.u_b)) return std::nullopt;
    ThresholdResult r;
    r.control = control;
    r.value = value;
    r.u = u_sn;
    r.v = v_sn;
    return r;
}

// scan a scalar function on a grid and bisect every sign change
template <class F>
std::vector<double> scan_roots(const F& fn, double lo, double hi, int n) {
    std::vector<double> roots;
    double x_prev = lo;
    double f_prev = fn(lo);
    for (int i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double fx = fn(x);
        if (std::isfinite(f_prev) && std::isfinite(fx) && f_prev * fx <= 0 && f_prev != fx) {
            double xa = x_prev, xb = x, fa = f_prev;
            for (int it = 0; it < 100; ++it) {
                const double xm = 0.5 * (xa + xb);
                const double fm = fn(xm);
                if (fa * fm <= 0)
                    xb = xm;
                else {
                    xa = xm;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (xa + xb));
        }
        x_prev = x;
        f_prev = fx;
    }
    return roots;
}

}  // namespace

ThresholdResult transcritical_threshold(const Params& p) {
    p.require_valid();
    ThresholdResult r;
    r.kind = "TC";
    r.control = "f";
    r.value = p.e * p.a / (p.b + 1.0);
    r.u = 1.0;
    r.v = 0.0;
    return r;
}

std::vector<ThresholdResult> saddle_node_thresholds(const Params& p, const std::string& control) {
    p.require_valid();
    std::vector<ThresholdResult> out;
    if (control == "f") {
        auto resid = [&](double u) { return f_from_Q(p, u) - f_from_Qprime(p, u); };
        for (double u_sn : scan_roots(resid, 1e-3, 1.0 - 1e-9, 4000)) {
            const double f_sn = f_from_Q(p, u_sn);
            Params q = p;
            q.f = f_sn;
            if (auto r = check_double_root(q, "f", f_sn, u_sn)) out.push_back(*r);
        }
    } else if (control == "b") {
        // Q is quadratic in b: A(u) b^2 + B(u) b + C(u) with A<0 on (0,1);
        // substitute each root branch into Q' and scan that for zeros.
        auto b_branch = [&](double u, int sign) -> double {
            const double a = p.a;
            const double A = std::pow(u, 5) - std::pow(u, 4);
            const double B = 2 * u * u * u - (a * p.f + 2) * u * u;
            const double C = (a * a * p.e + 1) * u - (a * p.f + 1);
            const double disc = B * B - 4 * A * C;
            if (disc < 0) return std::nan("");
            return (-B + sign * std::sqrt(disc)) / (2 * A);
        };
        for (int sign : {-1, +1}) {
            auto resid = [&](double u) -> double {
                const double b = b_branch(u, sign);
                if (!std::isfinite(b) || b <= 0) return std::nan("");
                Params q = p;
                q.b = b;
                return quintic_coefficients(q).deriv(u);
            };
            for (double u_sn : scan_roots(resid, 1e-3, 1.0 - 1e-9, 4000)) {
                const double b_sn = b_branch(u_sn, sign);
                Params q = p;
                q.b = b_sn;
                if (auto r = check_double_root(q, "b", b_sn, u_sn)) out.push_back(*r);
            }
        }
    } else {
        throw std::invalid_argument("control must be 'f' or 'b'");
    }
    std::sort(out.begin(), out.end(),
              [](const ThresholdResult& x, const ThresholdResult& y) { return x.u < y.u; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const ThresholdResult& x, const ThresholdResult& y) {
                              return std::abs(x.u - y.u) < 1e-8;
                          }),
              out.end());
    // the double root at smaller u merges the lower equilibrium pair -> SN1
    for (std::size_t i = 0; i < out.size(); ++i) out[i].kind = (i == 0) ? "SN1" : "SN2";
    return out;
}

std::optional<ThresholdResult> hopf_threshold(const Params& p, const std::string& control,
                                              double lo, double hi) {
    p.require_valid();
    auto trace_at = [&](double c) -> std::optional<std::pair<double, Equilibrium>> {
        auto e = first_interior(with_control(p, control, c));
        if (!e) return std::nullopt;
        const Jacobian2 j = jacobian(with_control(p, control, c), {e->u, e->v});
        return std::make_pair(j.trace(), *e);
    };
    const int n = 600;
    auto prev = trace_at(lo);
    double c_prev = lo;
    for (int i = 1; i <= n; ++i) {
        const double c = lo + (hi - lo) * i / n;
        auto cur = trace_at(c);
        if (prev && cur && prev->first * cur->first <= 0 && prev->first != cur->first) {
            double ca = c_prev, cb = c, fa = prev->first;
            for (int it = 0; it < 200; ++it) {
                const double cm = 0.5 * (ca + cb);
                auto mid = trace_at(cm);
                if (!mid) break;
                if (fa * mid->first <= 0)
                    cb = cm;
                else {
                    ca = cm;
                    fa = mid->first;
                }
            }
            const double c_h = 0.5 * (ca + cb);
            if (auto sol = trace_at(c_h)) {
                const Jacobian2 j =
                    jacobian(with_control(p, control, c_h), {sol->second.u, sol->second.v});
                if (j.det() > 0) {  // det<=0 would be a neutral saddle, not a Hopf
                    ThresholdResult r;
                    r.kind = "H";
                    r.control = control;
                    r.value = c_h;
                    r.u = sol->second.u;
                    r.v = sol->second.v;
                    return r;
                }
            }
        }
        c_prev = c;
        prev = cur;
    }
    return std::nullopt;
}

std::optional<ThresholdResult> hopf_threshold(const Params& p, const std::string& control) {
    if (control == "f") return hopf_threshold(p, control, 0.01, 2.5);
    return hopf_threshold(p, control, 0.2, 12.0);
}

HopfClassification lyapunov_first_coefficient(const Params& p, const ThresholdResult& hopf) {
    const Params q = with_control(p, hopf.control, hopf.value);
    const State s{hopf.u, hopf.v};
    const Jacobian2 j = jacobian(q, s);
    if (j.det() <= 0)
        throw std::domain_error("lyapunov_first_coefficient: det J <= 0 at claimed Hopf point");
    const double w = std::sqrt(j.det());
    // Basis T = [(a01,-a10), (0,-w)] brings the linear part to [[0,-w],[w,0]]
    // with det T = -a01*w > 0 (orientation preserved, so the sign convention
    // of the planar normal-form formula applies directly).
    const Vec2 t1{j.a01, -j.a10};
    const Vec2 t2{0.0, -w};
    const double detT = t1.x * t2.y - t2.x * t1.y;
    auto inv = [&](const Vec2& r) -> Vec2 {
        return {(t2.y * r.x - t2.x * r.y) / detT, (-t1.y * r.x + t1.x * r.y) / detT};
    };
    const PartialTable tab = partials_table(q, s);
    const Vec2 basis[2] = {t1, t2};
    auto d2 = [&](int i, int k) {
        const Vec2 vs[2] = {basis[i], basis[k]};
        return inv(apply_form(tab, vs, 2));
    };
    auto d3 = [&](int i, int k, int m) {
        const Vec2 vs[3] = {basis[i], basis[k], basis[m]};
        return inv(apply_form(tab, vs, 3));
    };
    const Vec2 fxx = d2(0, 0), fxy = d2(0, 1), fyy = d2(1, 1);
    const Vec2 fxxx = d3(0, 0, 0), fxyy = d3(0, 1, 1), fxxy = d3(0, 0, 1), fyyy = d3(1, 1, 1);
    const double l1 =
        (fxxx.x + fxyy.x + fxxy.y + fyyy.y +
         (fxy.x * (fxx.x + fyy.x) - fxy.y * (fxx.y + fyy.y) - fxx.x * fxx.y + fyy.x * fyy.y) / w) /
        16.0;
    HopfClassification out;
    out.l1 = l1;
    const double tol = 1e-8;
    out.criticality = (l1 > tol)    ? HopfCriticality::subcritical
                      : (l1 < -tol) ? HopfCriticality::supercritical
                                    : HopfCriticality::degenerate;
    return out;
}

namespace {

// Hopf solve warm-started in a window around a previous b value (used when
// tracing the Hopf curve in f toward the GH and BT points).
std::optional<ThresholdResult> hopf_b_near(const Params& base, double f, double b_guess) {
    Params q = base;
    q.f = f;
    auto r = hopf_threshold(q, "b", std::max(0.2, b_guess - 0.8), b_guess + 0.8);
    if (!r) r = hopf_threshold(q, "b");
    return r;
}

bool solve3(double A[3][3], double rhs[3], double x[3]) {
    int piv[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int best = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(A[piv[r]][col]) > std::abs(A[piv[best]][col])) best = r;
        std::swap(piv[col], piv[best]);
        const double d = A[piv[col]][col];
        if (std::abs(d) < 1e-300) return false;
        for (int r = col + 1; r < 3; ++r) {
            const double m = A[piv[r]][col] / d;
            for (int c = col; c < 3; ++c) A[piv[r]][c] -= m * A[piv[col]][c];
            rhs[piv[r]] -= m * rhs[piv[col]];
        }
    }
    for (int row = 2; row >= 0; --row) {
        double s = rhs[piv[row]];
        for (int c = row + 1; c < 3; ++c) s -= A[piv[row]][c] * x[c];
        x[row] = s / A[piv[row]][row];
    }
    return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
}

// Bogdanov-Takens refinement: Newton on the closed-form system
// Q(u)=Q'(u)=tr(u)=0 in (u,f,b) — far better conditioned than locating the
// nearly-double equilibrium numerically.
std::optional<Codim2Point> refine_bt(double a, double e, double u0, double f0, double b0) {
    auto resid = [&](double u, double f, double b, double F[3]) {
        Params q;
        q.a = a;
        q.e = e;
        q.f = f;
        q.b = b;
        const QuinticPoly quintic = quintic_coefficients(q);
        F[0] = quintic.eval(u);
        F[1] = quintic.deriv(u);
        F[2] = jacobian(q, {u, predator_nullcline(q, u)}).trace();
    };
    double x[3] = {u0, f0, b0};
    for (int it = 0; it < 80; ++it) {
        double F[3];
        resid(x[0], x[1], x[2], F);
        if (std::abs(F[0]) < 1e-11 && std::abs(F[1]) < 1e-11 && std::abs(F[2]) < 1e-12) break;
        double J[3][3];
        for (int c = 0; c < 3; ++c) {
            const double h = 1e-6 * std::max(1.0, std::abs(x[c]));
            double xp[3] = {x[0], x[1], x[2]}, xm[3] = {x[0], x[1], x[2]};
            xp[c] += h;
            xm[c] -= h;
            double Fp[3], Fm[3];
            resid(xp[0], xp[1], xp[2], Fp);
            resid(xm[0], xm[1], xm[2], Fm);
            for (int r = 0; r < 3; ++r) J[r][c] = (Fp[r] - Fm[r]) / (2 * h);
        }
        double rhs[3] = {-F[0], -F[1], -F[2]}, dx[3];
        if (!solve3(J, rhs, dx)) return std::nullopt;
        double scale = 1.0;
        for (int damp = 0; damp < 10; ++damp) {
            const double un = x[0] + scale * dx[0];
            const double fn = x[1] + scale * dx[1];
            const double bn = x[2] + scale * dx[2];
            if (un > 0 && un < 1 && fn > 0 && bn > 0) {
                x[0] = un;
                x[1] = fn;
                x[2] = bn;
                break;
            }
            scale *= 0.5;
        }
    }
    double F[3];
    resid(x[0], x[1], x[2], F);
    if (std::abs(F[0]) > 1e-9 || std::abs(F[1]) > 1e-9 || std::abs(F[2]) > 1e-9)
        return std::nullopt;
    Params q;
    q.a = a;
    q.e = e;
    q.f = x[1];
    q.b = x[2];
    Codim2Point pt;
    pt.kind = "BT";
    pt.f = x[1];
    pt.b = x[2];
    pt.u = x[0];
    pt.v = predator_nullcline(q, x[0]);
    return pt;
}

}  // namespace

std::vector<Codim2Point> codim2_points(double a, double e, const Codim2Window& win) {
    if (!(a > 0) || !(e > 0)) throw std::invalid_argument("codim2_points: need a,e > 0");
    std::vector<Codim2Point> out;
    Params base;
    base.a = a;
    base.e = e;

    // Cusp: the saddle-node pair is created at u=1 on the transcritical line;
    // Q(1)=Q'(1)=0 reduces to a cubic in f with b = (ae-f)/f.
    {
        auto cubic = [&](double z) { return 2 * z * z * z - a * e * z * z + a * e * e; };
        for (double z : scan_roots(cubic, 1e-6, a * e, 4000)) {
            const double f_cp = z, b_cp = (a * e - f_cp) / f_cp;
            if (f_cp < win.f_lo || f_cp > win.f_hi || b_cp < win.b_lo || b_cp > win.b_hi) continue;
            Codim2Point pt;
            pt.kind = "CP";
            pt.f = f_cp;
            pt.b = b_cp;
            pt.u = 1.0;
            pt.v = 0.0;
            out.push_back(pt);
        }
    }

    // Bautin: walk the Hopf curve b_H(f) and bisect the sign change of l1.
    {
        double b_guess = 6.0;
        auto l1_at = [&](double f) -> std::optional<double> {
            auto h = hopf_b_near(base, f, b_guess);
            if (!h) return std::nullopt;
            b_guess = h->value;
            Params q = base;
            q.f = f;
            return lyapunov_first_coefficient(q, *h).l1;
        };
        double f_prev = 0;
        std::optional<double> l_prev;
        for (double f = 0.95; f <= 1.2 + 1e-12; f += 0.005) {
            auto l = l1_at(f);
            if (l_prev && l && *l_prev * *l <= 0 && *l_prev != *l) {
                double fa = f_prev, fb = f, la = *l_prev;
                for (int it = 0; it < 60; ++it) {
                    const double fm = 0.5 * (fa + fb);
                    auto lm = l1_at(fm);
                    if (!lm) break;
                    if (la * *lm <= 0)
                        fb = fm;
                    else {
                        fa = fm;
                        la = *lm;
                    }
                }
                const double f_gh = 0.5 * (fa + fb);
                if (auto h = hopf_b_near(base, f_gh, b_guess)) {
                    if (f_gh >= win.f_lo && f_gh <= win.f_hi && h->value >= win.b_lo &&
                        h->value <= win.b_hi) {
                        Codim2Point pt;
                        pt.kind = "GH";
                        pt.f = f_gh;
                        pt.b = h->value;
                        pt.u = h->u;
                        pt.v = h->v;
                        out.push_back(pt);
                    }
                }
                break;
            }
            f_prev = f;
            l_prev = l;
        }
    }

    // Bogdanov-Takens: trace the Hopf curve upward in f until det J at the
    // Hopf equilibrium collapses (the curve ends there), then polish.
    {
        double b_guess = 6.0;
        std::optional<ThresholdResult> last;
        double f_last = 0;
        for (double f = 1.05; f <= win.f_hi + 0.2; f += 0.005) {
            auto h = hopf_b_near(base, f, b_guess);
            if (!h) break;
            b_guess = h->value;
            last = h;
            f_last = f;
            Params q = base;
            q.f = f;
            if (jacobian(q, {h->u, h->v}).det() < 1e-4) break;
        }
        if (last) {
            if (auto bt = refine_bt(a, e, last->u, f_last, last->value)) {
                if (bt->f >= win.f_lo && bt->f <= win.f_hi && bt->b >= win.b_lo &&
                    bt->b <= win.b_hi)
                    out.push_back(*bt);
            }
        }
    }

    return out;
}

// --- periodic orbits ---------------------------------------------------------

namespace {

// Flow plus variational (monodromy) equations: y = (u, v, m11, m21, m12, m22).
OdeRhs variational_rhs(const Params& p) {
    return [p](double, const std::vector<double>& y, std::vector<double>& d) {
        const Vec2 r = reaction_rates_raw(p, y[0], y[1]);
        const Jacobian2 j = jacobian(p, {y[0], y[1]});
        d[0] = r.x;
        d[1] = r.y;
        d[2] = j.a10 * y[2] + j.a01 * y[3];
        d[3] = j.b10 * y[2] + j.b01 * y[3];
        d[4] = j.a10 * y[4] + j.a01 * y[5];
        d[5] = j.b10 * y[4] + j.b01 * y[5];
    };
}

OdeOptions orbit_options() {
    OdeOptions o;
    o.rel_tol = 1e-10;
    o.abs_tol = 1e-12;
    o.max_step = 1.0;
    return o;  // no non-negativity clamp: monodromy entries are signed
}

struct FlowOut {
    double u, v;        // phi_T
    double m11, m21, m12, m22;
    Vec2 rate;          // f(phi_T)
    bool ok;
};

FlowOut flow_variational(const Params& p, double u0, double v0, double T,
                         std::vector<State>* samples = nullptr, std::size_t count = 0) {
    FlowOut out{};
    OdeObserver obs = nullptr;
    double next_t = 0;
    if (samples) {
        samples->clear();
        obs = [&](const DenseSegment& seg, const std::vector<double>&, double t) {
            while (next_t <= t + 1e-12 && std::size_t(samples->size()) < count) {
                samples->push_back(
                    {seg.eval_component(next_t, 0), seg.eval_component(next_t, 1)});
                next_t += T / double(count);
            }
            return true;
        };
    }
    OdeResult r =
        integrate(variational_rhs(p), {u0, v0, 1, 0, 0, 1}, 0.0, T, orbit_options(), obs);
    out.ok = (r.status == OdeStatus::done);
    if (!out.ok) return out;
    out.u = r.y[0];
    out.v = r.y[1];
    out.m11 = r.y[2];
    out.m21 = r.y[3];
    out.m12 = r.y[4];
    out.m22 = r.y[5];
    out.rate = reaction_rates_raw(p, out.u, out.v);
    return out;
}

}  // namespace

std::optional<PeriodicOrbit> shoot_orbit(const Params& p, double v0, double T,
                                         std::vector<State>* samples, std::size_t count) {
    p.require_valid();
    auto e1 = first_interior(p);
    if (!e1) return std::nullopt;
    const double u_sec = e1->u;
    FlowOut fl{};
    for (int it = 0; it < 15; ++it) {
        if (!(T > 1e-2) || !(v0 > 0) || v0 > 50) return std::nullopt;
        fl = flow_variational(p, u_sec, v0, T);
        if (!fl.ok) return std::nullopt;
        const double r1 = fl.u - u_sec;
        const double r2 = fl.v - v0;
        if (std::hypot(r1, r2) < 1e-9) {
            PeriodicOrbit orb;
            orb.control = p.f;
            orb.period = T;
            orb.u_section = u_sec;
            orb.v_section = v0;
            orb.multiplier = fl.m11 * fl.m22 - fl.m12 * fl.m21;  // det M = 1 * mu
            orb.stable = std::abs(orb.multiplier) < 1.0;
            orb.residual = std::hypot(r1, r2);
            if (samples) flow_variational(p, u_sec, v0, T, samples, count);
            return orb;
        }
        // Newton on (v0, T): d(phi)/dv0 is the second monodromy column.
        const double a11 = fl.m12, a12 = fl.rate.x;
        const double a21 = fl.m22 - 1.0, a22 = fl.rate.y;
        const double det = a11 * a22 - a12 * a21;
        if (std::abs(det) < 1e-14) return std::nullopt;
        double dv = (-r1 * a22 + r2 * a12) / det;
        double dT = (-a11 * r2 + a21 * r1) / det;
        if (std::abs(dT) > 0.3 * T) {  // keep the step sane far from the orbit
            const double sc = 0.3 * T / std::abs(dT);
            dT *= sc;
            dv *= sc;
        }
        v0 += dv;
        T += dT;
    }
    return std::nullopt;
}

std::optional<std::pair<double, double>> find_cycle_seed(const Params& p, const State& ic,
                                                         bool backward, double t_budget) {
    p.require_valid();
    auto e1 = first_interior(p);
    if (!e1) return std::nullopt;
    const double u_sec = e1->u, v_eq = e1->v;
    OdeRhs rhs = [p, backward](double, const std::vector<double>& y, std::vector<double>& d) {
        const Vec2 r = reaction_rates_raw(p, y[0], y[1]);
        d[0] = backward ? -r.x : r.x;
        d[1] = backward ? -r.y : r.y;
    };
    OdeOptions o;
    o.rel_tol = 1e-10;
    o.abs_tol = 1e-12;
    o.max_step = 1.0;
    o.enforce_nonnegative = !backward;  // reversed flow can leave the positive cone

    double prev_u = ic.u;
    bool have_prev = false;
    std::vector<std::pair<double, double>> crossings;  // (t, v)
    int agree = 0;
    std::optional<std::pair<double, double>> seed;
    auto obs = [&](const DenseSegment& seg, const std::vector<double>& y, double t) {
        if (have_prev && prev_u > u_sec && y[0] <= u_sec) {
            double lo = seg.t0, hi = seg.t0 + seg.h;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (seg.eval_component(mid, 0) > u_sec ? lo : hi) = mid;
            }
            const double tc = 0.5 * (lo + hi);
            const double vc = seg.eval_component(tc, 1);
            if (!crossings.empty() && std::abs(vc - crossings.back().second) < 1e-5 &&
                std::abs(vc - v_eq) > 1e-3) {
                if (++agree >= 2) {
                    seed = {vc, tc - crossings.back().first};
                    return false;
                }
            } else {
                agree = 0;
            }
            crossings.emplace_back(tc, vc);
        }
        prev_u = y[0];
        have_prev = true;
        return true;
    };
    integrate(rhs, {ic.u, ic.v}, 0.0, t_budget, o, obs);
    return seed;
}

CycleBranch cycle_branch(const Params& p, double f_lo, double f_hi, double f_start,
                         const State& seed_ic, bool seed_backward, bool go_down, int max_points,
                         double period_cap) {
    p.require_valid();
    CycleBranch br;
    Params q = p;
    q.f = f_start;
    auto seed = find_cycle_seed(q, seed_ic, seed_backward);
    if (!seed) {
        br.note = "seeding failed: no recurrent orbit found from the initial condition";
        return br;
    }
    auto orb0 = shoot_orbit(q, seed->first, seed->second);
    if (!orb0) {
        br.note = "seeding failed: shooting did not converge from the observed returns";
        return br;
    }
    br.points.push_back(*orb0);

    // Scaled coordinates for arclength: z-hat = (v0, T/50, f) so the period
    // does not dominate the metric.
    const double Tw = 50.0;
    auto scaled = [&](double v0, double T, double f) {
        return std::array<double, 3>{v0, T / Tw, f};
    };
    std::array<double, 3> z = scaled(orb0->v_section, orb0->period, f_start);
    std::array<double, 3> tan{0, 0, go_down ? -1.0 : 1.0};

    double ds = 1e-3;
    const double ds_min = 1e-8, ds_max = 1e-2;
    double s_accum = 0;
    std::vector<std::pair<double, double>> s_f;  // (arclength, f) for fold fitting
    s_f.emplace_back(0.0, f_start);
    int fail_streak = 0;

    // One Newton solve of the bordered system at prediction z_pred.
    auto correct = [&](std::array<double, 3> z_pred, std::array<double, 3>& z_out, FlowOut& fl_out,
                       double& usec_out, int& iters) -> bool {
        double v0 = z_pred[0], T = z_pred[1] * Tw, f = z_pred[2];
        for (iters = 0; iters < 10; ++iters) {
            if (!(T > 1e-2) || !(v0 > 0) || !(f > 0)) return false;
            Params qf = p;
            qf.f = f;
            auto e1 = first_interior(qf);
            if (!e1) return false;
            const double u_sec = e1->u;
            FlowOut fl = flow_variational(qf, u_sec, v0, T);
            if (!fl.ok) return false;
            const double r1 = fl.u - u_sec;
            const double r2 = fl.v - v0;
            const double r3 = tan[0] * (v0 - z_pred[0]) + tan[1] * (T / Tw - z_pred[1]) +
                              tan[2] * (f - z_pred[2]);
            if (std::hypot(r1, r2) < 1e-9 && std::abs(r3) < 1e-10) {
                z_out = scaled(v0, T, f);
                fl_out = fl;
                usec_out = u_sec;
                return true;
            }
            // derivative in f by finite differences (section moves with f too)
            const double hf = 1e-7;
            Params qf2 = p;
            qf2.f = f + hf;
            auto e2 = first_interior(qf2);
            if (!e2) return false;
            OdeResult pf = integrate(
                [qf2](double, const std::vector<double>& y, std::vector<double>& d) {
                    const Vec2 r = reaction_rates_raw(qf2, y[0], y[1]);
                    d[0] = r.x;
                    d[1] = r.y;
                },
                {e2->u, v0}, 0.0, T, orbit_options());
            if (pf.status != OdeStatus::done) return false;
            const double dr1df = ((pf.y[0] - e2->u) - r1) / hf;
            const double dr2df = ((pf.y[1] - v0) - r2) / hf;
            double A[3][3] = {{fl.m12, fl.rate.x, dr1df},
                              {fl.m22 - 1.0, fl.rate.y, dr2df},
                              {tan[0], tan[1] / Tw, tan[2]}};
            double rhs[3] = {-r1, -r2, -r3}, dx[3];
            if (!solve3(A, rhs, dx)) return false;
            v0 += dx[0];
            T += dx[1];
            f += dx[2];
        }
        return false;
    };

    while (int(br.points.size()) < max_points) {
        std::array<double, 3> z_pred{z[0] + ds * tan[0], z[1] + ds * tan[1], z[2] + ds * tan[2]};
        std::array<double, 3> z_new;
        FlowOut fl;
        double u_sec = 0;
        int iters = 0;
        if (!correct(z_pred, z_new, fl, u_sec, iters)) {
            ds *= 0.5;
            if (ds < ds_min || ++fail_streak > 40) {
                br.note = "stopped: corrector failed repeatedly";
                break;
            }
            continue;
        }
        fail_streak = 0;

        const double f_new = z_new[2], T_new = z_new[1] * Tw, v_new = z_new[0];
        PeriodicOrbit orb;
        orb.control = f_new;
        orb.period = T_new;
        orb.u_section = u_sec;
        orb.v_section = v_new;
        orb.multiplier = fl.m11 * fl.m22 - fl.m12 * fl.m21;
        orb.stable = std::abs(orb.multiplier) < 1.0;
        orb.residual = std::hypot(fl.u - u_sec, fl.v - v_new);

        // new secant tangent; its f-component flipping sign marks a fold
        std::array<double, 3> tan_new{z_new[0] - z[0], z_new[1] - z[1], z_new[2] - z[2]};
        const double norm = std::sqrt(tan_new[0] * tan_new[0] + tan_new[1] * tan_new[1] +
                                      tan_new[2] * tan_new[2]);
        for (auto& t : tan_new) t /= norm;
        s_accum += norm;
        s_f.emplace_back(s_accum, f_new);

        if (!br.snlc && br.points.size() >= 2 && tan[2] * tan_new[2] < 0) {
            // parabola through the last three (s, f) points; vertex = fold
            const auto [s0, g0] = s_f[s_f.size() - 3];
            const auto [s1, g1] = s_f[s_f.size() - 2];
            const auto [s2, g2] = s_f[s_f.size() - 1];
            const double d01 = (g1 - g0) / (s1 - s0), d12 = (g2 - g1) / (s2 - s1);
            const double c2 = (d12 - d01) / (s2 - s0);
            double f_fold = g1;
            if (std::abs(c2) > 1e-14) {
                const double s_v = 0.5 * (s0 + s1 - d01 / c2);
                f_fold = g1 + d01 * (s_v - s1) + c2 * (s_v - s0) * (s_v - s1);
            }
            ThresholdResult th;
            th.kind = "SNLC";
            th.control = "f";
            th.value = f_fold;
            th.u = orb.u_section;
            th.v = orb.v_section;
            br.snlc = th;
            Params qf = p;
            qf.f = f_new;
            shoot_orbit(qf, v_new, T_new, &br.dead_cycle);
        }

        br.points.push_back(orb);
        z = z_new;
        tan = tan_new;
        if (iters <= 3)
            ds = std::min(ds * 1.4, ds_max);
        else if (iters >= 7)
            ds *= 0.7;

        if (f_new < f_lo || f_new > f_hi) {
            br.note = "stopped: control left the requested range";
            break;
        }
        if (T_new > period_cap) {
            br.note = "stopped: period cap exceeded (homoclinic proxy)";
            break;
        }
        Params qf = p;
        qf.f = f_new;
        if (auto e1 = first_interior(qf); e1 && std::abs(v_new - e1->v) < 1e-4) {
            br.note = "stopped: orbit amplitude collapsed into the equilibrium (Hopf end)";
            break;
        }
    }
    if (br.note.empty()) br.note = "stopped: point budget exhausted";
    return br;
}

std::optional<ThresholdResult> hom_proxy_threshold(const Params& p, double f_cycle,
                                                   double f_no_cycle, const State& ic,
                                                   double t_max, double tol) {
    p.require_valid();
    auto has_cycle = [&](double f) {
        Params q = p;
        q.f = f;
        return classify_attractor(q, ic, t_max).kind == AttractorKind::limit_cycle;
    };
    if (!has_cycle(f_cycle) || has_cycle(f_no_cycle)) return std::nullopt;
    double fa = f_cycle, fb = f_no_cycle;
    while (std::abs(fb - fa) > tol) {
        const double fm = 0.5 * (fa + fb);
        (has_cycle(fm) ? fa : fb) = fm;
    }
    ThresholdResult r;
    r.kind = "HOM-proxy";
    r.control = "f";
    r.value = 0.5 * (fa + fb);
    r.u = ic.u;
    r.v = ic.v;
    return r;
}

}  // namespace eco
