#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ecopattern/attractor.hpp"
#include "ecopattern/equilibria.hpp"
#include "ecopattern/kinetics.hpp"
#include "ecopattern/pde.hpp"
#include "ecopattern/spatial.hpp"
#include "ecopattern/wna.hpp"

#include <cmath>
#include <vector>

using namespace eco;

namespace {

Params pattern_params(double c) {
    Params p{7.0, 5.65, c, 80.0, 0.95, 0.98};
    return p;
}

State first_interior(const Params& p) {
    const auto interior = find_equilibria(p).interior();
    REQUIRE(!interior.empty());
    return {interior[0].u, interior[0].v};
}

double total_mass(const std::vector<double>& cells, const GridSpec& g) {
    double s = 0;
    for (double x : cells) s += x;
    return s * g.h();
}

}  // namespace

TEST_CASE("fluxes conserve mass exactly when reactions are off") {
    Params p = pattern_params(5.0);
    p.d = 20.0;
    const GridSpec g{50.0, 64};
    const Field1D ic = noisy_homogeneous_ic(g, {0.5, 0.3}, 0.05, 9);
    PdeOptions opts;
    opts.t_end = 50.0;
    opts.reactions_enabled = false;
    opts.stop_when_steady = false;
    opts.frame_interval = 10.0;

    for (bool upwind : {false, true}) {
        opts.upwind_taxis = upwind;
        const PdeResult r = simulate_pde(p, g, ic, opts);
        REQUIRE(!r.aborted);
        const double mu0 = total_mass(ic.u, g), mv0 = total_mass(ic.v, g);
        for (const Field1D& fr : r.frames) {
            CHECK(std::fabs(total_mass(fr.u, g) - mu0) / mu0 < 1e-10);
            CHECK(std::fabs(total_mass(fr.v, g) - mv0) / mv0 < 1e-10);
        }
        // diffusion+taxis alone must not manufacture negative cells either
        CHECK(r.bounds.min_u >= 0.0);
        CHECK(r.bounds.min_v >= 0.0);
    }
}

TEST_CASE("homogeneous fields follow the kinetics ODE") {
    const Params p = pattern_params(27.0);  // taxis is inert on a flat field
    const GridSpec g{10.0, 32};
    Field1D ic;
    ic.u.assign(g.N, 0.3);
    ic.v.assign(g.N, 0.2);
    PdeOptions opts;
    opts.t_end = 50.0;
    opts.rel_tol = 1e-10;
    opts.stop_when_steady = false;
    const PdeResult r = simulate_pde(p, g, ic, opts);
    REQUIRE(!r.aborted);
    const Trajectory tr = solve_ode(p, {0.3, 0.2}, 50.0, 1e-12);
    const Field1D& last = r.frames.back();
    for (int i = 0; i < g.N; ++i) {
        CHECK(std::fabs(last.u[i] - tr.states.back().u) < 1e-6);
        CHECK(std::fabs(last.v[i] - tr.states.back().v) < 1e-6);
    }
    // no spatial structure is generated from uniform data
    double smin = 1e300, smax = -1e300;
    for (double x : last.u) { smin = std::min(smin, x); smax = std::max(smax, x); }
    CHECK(smax - smin < 1e-10);
}

TEST_CASE("running bounds hold on a patterned run") {
    const Params p = pattern_params(27.0);
    const State eq = first_interior(p);
    const WnaResult w = wna_analysis(p);
    const GridSpec g{9 * 2 * M_PI / w.turing.k_T, 256};
    const Field1D ic = single_mode_ic(g, eq, w.turing.k_T, 0.18, 0.004);
    PdeOptions opts;
    opts.t_end = 400.0;
    const PdeResult r = simulate_pde(p, g, ic, opts);
    REQUIRE(!r.aborted);
    CHECK(r.bounds.ok);
    CHECK(r.bounds.violation.empty());
    CHECK(r.bounds.min_u >= 0.0);
    CHECK(r.bounds.min_v >= 0.0);
    CHECK(r.bounds.max_u <= r.bounds.C + 1e-6);
    CHECK(r.bounds.max_K1 <= r.bounds.A + 1e-6);
    CHECK(r.bounds.max_K2 <= r.bounds.B + 1e-6);
    CHECK(r.steady);         // the striped state settles well before t_end
    CHECK(r.t_final < opts.t_end);
}

TEST_CASE("grid refinement leaves the pattern average unchanged") {
    const Params p = pattern_params(27.0);
    const State eq = first_interior(p);
    const WnaResult w = wna_analysis(p);
    const double L = 9 * 2 * M_PI / w.turing.k_T;
    PdeOptions opts;
    opts.t_end = 300.0;
    double means[2];
    int idx = 0;
    for (int N : {256, 512}) {
        const GridSpec g{L, N};
        const Field1D ic = single_mode_ic(g, eq, w.turing.k_T, 0.18, 0.004);
        const PdeResult r = simulate_pde(p, g, ic, opts);
        REQUIRE(!r.aborted);
        means[idx++] = spatial_mean(r.frames.back().u, g);
    }
    CHECK(std::fabs(means[0] - means[1]) / means[1] < 0.005);
}

TEST_CASE("small perturbations grow at the linear dispersion rate") {
    const Params p = pattern_params(32.0);
    const State eq = first_interior(p);
    const WnaResult w = wna_analysis(p);
    const double L = 9 * 2 * M_PI / w.turing.k_T;  // mode 18 sits exactly at k_T
    const GridSpec g{L, 256};
    const int m = 18;
    const double k_lap = std::pow(m * M_PI / L, 2);
    const Jacobian2 j = jacobian(p, eq);
    const double expected = dispersion_re_lambda(p, j, eq.v, k_lap);
    REQUIRE(expected > 1e-3);

    const Field1D ic = single_mode_ic(g, eq, m * M_PI / L, 1e-6, 0.0);
    PdeOptions opts;
    opts.t_end = 700.0;
    opts.frame_interval = 50.0;
    opts.rel_tol = 1e-8;
    opts.stop_when_steady = false;
    const PdeResult r = simulate_pde(p, g, ic, opts);
    REQUIRE(!r.aborted);
    // fit log-amplitude growth, skipping the initial relaxation onto the
    // growing eigendirection and capping the window inside the linear regime
    std::vector<double> ts, logs;
    for (const Field1D& fr : r.frames) {
        if (fr.t < 99.0) continue;
        const double amp = mode_amplitude(fr.u, m);
        if (amp < 1e-12 || amp > 2e-3) continue;
        ts.push_back(fr.t);
        logs.push_back(std::log(amp));
    }
    REQUIRE(ts.size() >= 5);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        sx += ts[i]; sy += logs[i]; sxx += ts[i] * ts[i]; sxy += ts[i] * logs[i];
    }
    const double n = double(ts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(expected).epsilon(0.1));
}

TEST_CASE("initial-condition helpers") {
    const GridSpec g{100.0, 128};
    SUBCASE("noisy field is seed-deterministic") {
        const Field1D a = noisy_homogeneous_ic(g, {0.5, 0.25}, 0.01, 42);
        const Field1D b = noisy_homogeneous_ic(g, {0.5, 0.25}, 0.01, 42);
        const Field1D c = noisy_homogeneous_ic(g, {0.5, 0.25}, 0.01, 43);
        CHECK(a.u == b.u);
        CHECK(a.v == b.v);
        CHECK(a.u != c.u);
        // noise has the requested scale
        double dev = 0;
        for (double x : a.u) dev = std::max(dev, std::fabs(x - 0.5));
        CHECK(dev > 1e-4);
        CHECK(dev < 0.1);
    }
    SUBCASE("windowed noise leaves the outside untouched") {
        const Field1D f = windowed_noise_ic(g, {0.4, 0.2}, 0.05, 30.0, 60.0, 7);
        bool inside_perturbed = false;
        for (int i = 0; i < g.N; ++i) {
            const double x = g.center(i);
            if (x < 30.0 || x > 60.0) {
                CHECK(f.u[i] == 0.4);
                CHECK(f.v[i] == 0.2);
            } else if (f.u[i] != 0.4) {
                inside_perturbed = true;
            }
        }
        CHECK(inside_perturbed);
    }
    SUBCASE("single mode lays down exact cosines") {
        const double k = 3 * M_PI / g.L;
        const Field1D f = single_mode_ic(g, {0.3, 0.15}, k, 1e-2, 2e-3);
        for (int i = 0; i < g.N; i += 17) {
            const double x = g.center(i);
            CHECK(f.u[i] == doctest::Approx(0.3 + 1e-2 * std::cos(k * x)).epsilon(1e-14));
            CHECK(f.v[i] == doctest::Approx(0.15 + 2e-3 * std::cos(k * x)).epsilon(1e-14));
        }
    }
    SUBCASE("negative initial data is rejected") {
        Field1D f;
        f.u.assign(g.N, 0.5);
        f.v.assign(g.N, 0.1);
        f.u[5] = -0.01;
        CHECK_THROWS_AS((void)simulate_pde(pattern_params(0), g, f, {}), std::invalid_argument);
        Field1D wrong;
        wrong.u.assign(g.N + 1, 0.5);
        wrong.v.assign(g.N + 1, 0.1);
        CHECK_THROWS_AS((void)simulate_pde(pattern_params(0), g, wrong, {}), std::invalid_argument);
        const GridSpec tiny{10.0, 8};
        Field1D small;
        small.u.assign(8, 0.5);
        small.v.assign(8, 0.1);
        CHECK_THROWS_AS((void)simulate_pde(pattern_params(0), tiny, small, {}),
                        std::invalid_argument);
    }
}

TEST_CASE("cosine mode projection is orthonormal") {
    const int N = 128;
    std::vector<double> cells(N);
    for (int m_true : {1, 4, 9}) {
        for (int i = 0; i < N; ++i) cells[i] = 0.7 * std::cos(m_true * M_PI * (i + 0.5) / N);
        CHECK(mode_amplitude(cells, m_true) == doctest::Approx(0.7).epsilon(1e-12));
        for (int m : {1, 2, 4, 9, 11})
            if (m != m_true) CHECK(std::fabs(mode_amplitude(cells, m)) < 1e-12);
    }
}

TEST_CASE("field statistics on synthetic frames") {
    const GridSpec g{100.0, 200};
    auto make = [&](double t, double base, double amp, int m) {
        Field1D f;
        f.t = t;
        f.u.resize(g.N);
        f.v.assign(g.N, 1.0);
        for (int i = 0; i < g.N; ++i)
            f.u[i] = base + amp * std::cos(m * M_PI * g.center(i) / g.L);
        return f;
    };
    const std::vector<Field1D> frames = {make(1.0, 1.0, 0.0, 3), make(2.0, 2.0, 0.5, 3)};
    const FieldStats st = field_statistics(frames, g);
    CHECK(st.mean_u == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(st.mean_v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(st.peak_to_peak_u == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::fabs(st.peak_to_peak_v) < 1e-14);
    CHECK(st.spatial_std_u == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-3));
    CHECK(st.dominant_mode == 3);
    CHECK(st.dominant_wavenumber == doctest::Approx(3 * M_PI / g.L).epsilon(1e-12));
    CHECK(st.dominant_amplitude == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(st.temporal_std_mean_u == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS((void)field_statistics({}, g), std::invalid_argument);
}

TEST_CASE("upwind taxis variant also reaches a sane pattern") {
    const Params p = pattern_params(35.0);
    const State eq = first_interior(p);
    const GridSpec g{100.0, 128};
    const Field1D ic = noisy_homogeneous_ic(g, eq, 1e-3, 5);
    PdeOptions opts;
    opts.t_end = 300.0;
    opts.upwind_taxis = true;
    const PdeResult r = simulate_pde(p, g, ic, opts);
    REQUIRE(!r.aborted);
    CHECK(r.bounds.ok);
    const FieldStats st = field_statistics(r.frames, g, 100.0);
    CHECK(std::isfinite(st.mean_u));
    CHECK(st.mean_u > 0.0);
    CHECK(st.mean_u < 1.5);
}
