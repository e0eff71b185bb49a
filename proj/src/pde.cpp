#include "ecopattern/pde.hpp"

#include "ecopattern/kinetics.hpp"
#include "ecopattern/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eco {

namespace {

// Cell-centered finite-volume right-hand side.  Face fluxes (zero at both
// boundary faces = mirror ghosts):
//   u:  (u_{i+1}-u_i)/h
//   v:  d (v_{i+1}-v_i)/h + c * v_face * (u_{i+1}-u_i)/h
// with v_face the arithmetic mean, or the upwind cell against the taxis
// drift velocity w = -c u_x when requested.
struct PdeRhs {
    Params p;
    int N;
    double inv_h;
    bool upwind;
    bool react;

    void operator()(double, const std::vector<double>& y, std::vector<double>& dy) const {
        const double* u = y.data();
        const double* v = y.data() + N;
        double* du = dy.data();
        double* dv = dy.data() + N;
        if (react) {
            for (int i = 0; i < N; ++i) {
                const Vec2 r = reaction_rates_raw(p, u[i], v[i]);
                du[i] = r.x;
                dv[i] = r.y;
            }
        } else {
            std::fill(dy.begin(), dy.end(), 0.0);
        }
        for (int i = 0; i + 1 < N; ++i) {
            const double gu = (u[i + 1] - u[i]) * inv_h;
            double vf;
            if (upwind)
                vf = (-p.c * gu > 0) ? v[i] : v[i + 1];
            else
                vf = 0.5 * (v[i] + v[i + 1]);
            const double Fu = gu * inv_h;
            const double Fv = (p.d * (v[i + 1] - v[i]) * inv_h + p.c * vf * gu) * inv_h;
            du[i] += Fu;
            du[i + 1] -= Fu;
            dv[i] += Fv;
            dv[i + 1] -= Fv;
        }
    }
};

void check_frame(const Field1D& fr, const GridSpec& g, BoundsReport& rep) {
    const double h = g.h();
    double K1 = 0, K2 = 0, umax = -1e300, umin = 1e300, vmin = 1e300;
    for (int i = 0; i < g.N; ++i) {
        K1 += fr.u[i];
        K2 += fr.v[i];
        umax = std::max(umax, fr.u[i]);
        umin = std::min(umin, fr.u[i]);
        vmin = std::min(vmin, fr.v[i]);
    }
    K1 *= h;
    K2 *= h;
    rep.K1 = K1;
    rep.K2 = K2;
    rep.max_K1 = std::max(rep.max_K1, K1);
    rep.max_K2 = std::max(rep.max_K2, K2);
    rep.max_u = std::max(rep.max_u, umax);
    rep.min_u = std::min(rep.min_u, umin);
    rep.min_v = std::min(rep.min_v, vmin);
    if (!rep.ok) return;
    auto fail = [&](const std::string& why) {
        rep.ok = false;
        rep.violation = why + " at t=" + std::to_string(fr.t);
    };
    if (umin < -1e-10) fail("u below -1e-10");
    else if (vmin < -1e-10) fail("v below -1e-10");
    else if (umax > rep.C + 1e-6) fail("u above the maximum-principle ceiling");
    else if (K1 > rep.A + 1e-6) fail("prey mass above its bound");
    else if (K2 > rep.B + 1e-6) fail("predator mass above its bound");
}

}  // namespace

PdeResult simulate_pde(const Params& p, const GridSpec& g, const Field1D& ic,
                       const PdeOptions& opts) {
    p.require_valid();
    if (g.N < 16 || !(g.L > 0)) throw std::invalid_argument("simulate_pde: bad grid");
    if (int(ic.u.size()) != g.N || int(ic.v.size()) != g.N)
        throw std::invalid_argument("simulate_pde: field size does not match grid");
    for (int i = 0; i < g.N; ++i)
        if (!(ic.u[i] >= -1e-10) || !(ic.v[i] >= -1e-10))
            throw std::invalid_argument("simulate_pde: negative initial data");

    const int N = g.N;
    const double h = g.h();
    PdeRhs rhs{p, N, 1.0 / h, opts.upwind_taxis, opts.reactions_enabled};

    PdeResult res;
    // bound constants are fixed by the initial data
    {
        double K1 = 0, K2 = 0, umax = 0;
        for (int i = 0; i < N; ++i) {
            K1 += ic.u[i];
            K2 += ic.v[i];
            umax = std::max(umax, ic.u[i]);
        }
        K1 *= h;
        K2 *= h;
        res.bounds.A = std::max(K1, g.L);
        res.bounds.B = (K1 + p.e * K2 + (p.f * p.f + 1.0) / p.f * res.bounds.A) / p.e;
        res.bounds.C = std::max(1.0, umax);
        res.bounds.min_u = res.bounds.min_v = 1e300;
    }

    Field1D first = ic;
    first.t = 0;
    check_frame(first, g, res.bounds);
    res.frames.push_back(std::move(first));

    std::vector<double> y0(2 * std::size_t(N));
    std::copy(ic.u.begin(), ic.u.end(), y0.begin());
    std::copy(ic.v.begin(), ic.v.end(), y0.begin() + N);

    OdeOptions oo;
    oo.rel_tol = opts.rel_tol;
    oo.abs_tol = 1e-9;
    oo.max_step = 0.9 * h * h / (2.0 * std::max(1.0, p.d));  // explicit-diffusion cap
    oo.initial_step = std::min(oo.max_step, 1e-4);
    oo.min_step = 1e-14;
    oo.enforce_nonnegative = true;

    double next_frame = opts.frame_interval;
    double steady_since = -1;
    std::vector<double> buf(2 * std::size_t(N)), dbuf(2 * std::size_t(N));

    auto emit = [&](double t, const std::vector<double>& y) -> bool {
        Field1D fr;
        fr.t = t;
        fr.u.assign(y.begin(), y.begin() + N);
        fr.v.assign(y.begin() + N, y.end());
        check_frame(fr, g, res.bounds);
        res.frames.push_back(std::move(fr));
        if (!res.bounds.ok) {
            res.aborted = true;
            res.abort_reason = res.bounds.violation;
            return false;
        }
        if (opts.stop_when_steady) {
            rhs(t, y, dbuf);
            double rate = 0;
            for (int i = 0; i < N; ++i) rate = std::max(rate, std::abs(dbuf[i]));
            if (rate < 1e-8) {
                if (steady_since < 0) steady_since = t;
                if (t - steady_since >= 50.0) {
                    res.steady = true;
                    return false;
                }
            } else {
                steady_since = -1;
            }
        }
        return true;
    };

    auto obs = [&](const DenseSegment& seg, const std::vector<double>&, double t) -> bool {
        while (next_frame <= t + 1e-9 && next_frame < opts.t_end - 1e-9) {
            seg.eval(next_frame, buf);
            const double tf = next_frame;
            next_frame += opts.frame_interval;
            if (!emit(tf, buf)) return false;
        }
        return true;
    };

    OdeRhs wrapped = [&rhs](double t, const std::vector<double>& y, std::vector<double>& dy) {
        rhs(t, y, dy);
    };
    OdeResult r = integrate(wrapped, std::move(y0), 0.0, opts.t_end, oo, obs);
    res.status = r.status;
    res.n_steps = r.n_steps;
    res.t_final = r.t;
    if (!res.aborted && (res.frames.empty() || res.frames.back().t < r.t - 1e-9))
        emit(r.t, r.y);
    return res;
}

Field1D noisy_homogeneous_ic(const GridSpec& g, const State& base, double amp,
                             std::uint64_t seed) {
    NoiseGen rng(seed);
    Field1D f;
    f.u.resize(g.N);
    f.v.resize(g.N);
    for (int i = 0; i < g.N; ++i) f.u[i] = std::max(0.0, base.u + amp * rng.gaussian());
    for (int i = 0; i < g.N; ++i) f.v[i] = std::max(0.0, base.v + amp * rng.gaussian());
    return f;
}

Field1D windowed_noise_ic(const GridSpec& g, const State& base, double amp, double x_lo,
                          double x_hi, std::uint64_t seed) {
    NoiseGen rng(seed);
    Field1D f;
    f.u.assign(g.N, base.u);
    f.v.assign(g.N, base.v);
    for (int i = 0; i < g.N; ++i) {
        const double x = g.center(i);
        if (x > x_lo && x < x_hi) f.u[i] = std::max(0.0, base.u + amp * rng.gaussian());
    }
    for (int i = 0; i < g.N; ++i) {
        const double x = g.center(i);
        if (x > x_lo && x < x_hi) f.v[i] = std::max(0.0, base.v + amp * rng.gaussian());
    }
    return f;
}

Field1D single_mode_ic(const GridSpec& g, const State& base, double wavenumber, double amp_u,
                       double amp_v) {
    Field1D f;
    f.u.resize(g.N);
    f.v.resize(g.N);
    for (int i = 0; i < g.N; ++i) {
        const double cx = std::cos(wavenumber * g.center(i));
        f.u[i] = std::max(0.0, base.u + amp_u * cx);
        f.v[i] = std::max(0.0, base.v + amp_v * cx);
    }
    return f;
}

double mode_amplitude(const std::vector<double>& cells, int m) {
    const int N = int(cells.size());
    double s = 0;
    for (int j = 0; j < N; ++j) s += cells[j] * std::cos(m * M_PI * (j + 0.5) / N);
    return std::abs(2.0 * s / N);
}

double spatial_mean(const std::vector<double>& cells, const GridSpec& g) {
    // trapezoid over the cell centers, which span [h/2, L-h/2]
    double s = 0;
    for (double c : cells) s += c;
    s -= 0.5 * (cells.front() + cells.back());
    return s * g.h() / (g.L - g.h());
}

FieldStats field_statistics(const std::vector<Field1D>& frames, const GridSpec& g,
                            double t_cutoff) {
    if (frames.empty()) throw std::invalid_argument("field_statistics: no frames");
    FieldStats st;
    const Field1D& last = frames.back();
    st.mean_u = spatial_mean(last.u, g);
    st.mean_v = spatial_mean(last.v, g);
    const auto [umin, umax] = std::minmax_element(last.u.begin(), last.u.end());
    const auto [vmin, vmax] = std::minmax_element(last.v.begin(), last.v.end());
    st.peak_to_peak_u = *umax - *umin;
    st.peak_to_peak_v = *vmax - *vmin;
    {
        double s2 = 0;
        for (double u : last.u) s2 += (u - st.mean_u) * (u - st.mean_u);
        st.spatial_std_u = std::sqrt(s2 / last.u.size());
    }
    {
        std::vector<double> centered(last.u.size());
        for (std::size_t i = 0; i < last.u.size(); ++i) centered[i] = last.u[i] - st.mean_u;
        double best = 0;
        for (int m = 1; m <= g.N / 2; ++m) {
            const double a = mode_amplitude(centered, m);
            if (a > best) {
                best = a;
                st.dominant_mode = m;
            }
        }
        if (best < 1e-12) st.dominant_mode = 0;
        st.dominant_amplitude = best;
        st.dominant_wavenumber = st.dominant_mode * M_PI / g.L;
    }
    {
        std::vector<double> means;
        for (const auto& fr : frames)
            if (fr.t > t_cutoff) means.push_back(spatial_mean(fr.u, g));
        if (means.size() >= 2) {
            double mu = 0;
            for (double m : means) mu += m;
            mu /= means.size();
            double s2 = 0;
            for (double m : means) s2 += (m - mu) * (m - mu);
            st.temporal_std_mean_u = std::sqrt(s2 / means.size());
        }
    }
    return st;
}

}  // namespace eco
