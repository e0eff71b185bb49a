#include "ecopattern/tasks.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

#include "ecopattern/attractor.hpp"
#include "ecopattern/bifurcation.hpp"
#include "ecopattern/equilibria.hpp"
#include "ecopattern/output.hpp"
#include "ecopattern/pde.hpp"
#include "ecopattern/render.hpp"
#include "ecopattern/scenario.hpp"
#include "ecopattern/spatial.hpp"
#include "ecopattern/sweep.hpp"
#include "ecopattern/wna.hpp"

namespace eco {

namespace {

struct TaskContext {
    const Scenario& sc;
    Params p;
    std::string out;
    std::uint64_t seed = 0;
    int workers = 1;
    ManifestInfo* manifest = nullptr;

    std::string path(const std::string& name) const { return join_path(out, name); }
    void produced(const std::string& name) { manifest->outputs.push_back(name); }
};

const char* ode_status_text(OdeStatus s) {
    switch (s) {
        case OdeStatus::done: return "done";
        case OdeStatus::halted: return "halted";
        case OdeStatus::step_underflow: return "step underflow";
        case OdeStatus::too_many_steps: return "step budget exhausted";
    }
    return "?";
}

Equilibrium first_interior(const Params& p, const char* who) {
    auto inter = find_equilibria(p).interior();
    if (inter.empty())
        throw std::runtime_error(std::string(who) + ": no coexistence equilibrium at these parameters");
    return inter.front();
}

// ---------------------------------------------------------------- equilibria

void task_equilibria(TaskContext& ctx) {
    const EquilibriumSet es = find_equilibria(ctx.p);
    CsvWriter csv(ctx.path("equilibria.csv"),
                  {"kind", "u", "v", "re1", "im1", "re2", "im2", "label"});
    for (const auto& eq : es.eqs)
        csv.row({to_string(eq.kind), fmt_g17(eq.u), fmt_g17(eq.v), fmt_g17(eq.lam1.real()),
                 fmt_g17(eq.lam1.imag()), fmt_g17(eq.lam2.real()), fmt_g17(eq.lam2.imag()),
                 to_string(eq.stability)});
    ctx.produced("equilibria.csv");
}

// ----------------------------------------------------------------- bifurcate

void task_bifurcate(TaskContext& ctx) {
    const std::string control = ctx.sc.get_str("bifurcate", "control", "f");
    if (control != "f" && control != "b")
        throw ScenarioError("bifurcate: control must be 'f' or 'b'");
    const bool have_window =
        ctx.sc.has("bifurcate", "hopf_lo") && ctx.sc.has("bifurcate", "hopf_hi");
    const double hopf_lo = ctx.sc.get_num("bifurcate", "hopf_lo", 0);
    const double hopf_hi = ctx.sc.get_num("bifurcate", "hopf_hi", 0);

    CsvWriter csv(ctx.path("thresholds.csv"), {"kind", "control", "value", "u", "v"});
    auto emit = [&](const ThresholdResult& t, const std::string& kind) {
        csv.row({kind, t.control, fmt_g17(t.value), fmt_g17(t.u), fmt_g17(t.v)});
    };
    const ThresholdResult tc = transcritical_threshold(ctx.p);
    emit(tc, tc.kind);
    for (const auto& sn : saddle_node_thresholds(ctx.p, control)) emit(sn, sn.kind);
    const auto hopf = have_window ? hopf_threshold(ctx.p, control, hopf_lo, hopf_hi)
                                  : hopf_threshold(ctx.p, control);
    if (hopf) {
        const HopfClassification hc = lyapunov_first_coefficient(ctx.p, *hopf);
        const char* kind = hc.criticality == HopfCriticality::supercritical ? "H-supercritical"
                           : hc.criticality == HopfCriticality::subcritical ? "H-subcritical"
                                                                            : "H-degenerate";
        emit(*hopf, kind);
    }
    ctx.produced("thresholds.csv");
}

// -------------------------------------------------------------------- codim2

void task_codim2(TaskContext& ctx) {
    Codim2Window win;
    win.f_lo = ctx.sc.get_num("codim2", "f_lo", win.f_lo);
    win.f_hi = ctx.sc.get_num("codim2", "f_hi", win.f_hi);
    win.b_lo = ctx.sc.get_num("codim2", "b_lo", win.b_lo);
    win.b_hi = ctx.sc.get_num("codim2", "b_hi", win.b_hi);
    const auto pts = codim2_points(ctx.p.a, ctx.p.e, win);
    CsvWriter csv(ctx.path("codim2.csv"), {"kind", "f", "b", "u", "v"});
    for (const auto& pt : pts)
        csv.row({pt.kind, fmt_g17(pt.f), fmt_g17(pt.b), fmt_g17(pt.u), fmt_g17(pt.v)});
    ctx.produced("codim2.csv");
}

// -------------------------------------------------------------------- cycles

void task_cycles(TaskContext& ctx) {
    const Scenario& sc = ctx.sc;
    const double f_lo = sc.require_num("cycles", "f_lo");
    const double f_hi = sc.require_num("cycles", "f_hi");
    const double f_start = sc.get_num("cycles", "f_start", ctx.p.f);
    const State seed_ic{sc.require_num("cycles", "u0"), sc.require_num("cycles", "v0")};
    const bool backward = sc.get_bool("cycles", "backward", false);
    const bool go_down = sc.get_bool("cycles", "go_down", true);
    const int max_points = sc.get_int("cycles", "max_points", 4000);
    const double period_cap = sc.get_num("cycles", "period_cap", 500.0);

    const CycleBranch br = cycle_branch(ctx.p, f_lo, f_hi, f_start, seed_ic, backward, go_down,
                                        max_points, period_cap);
    CsvWriter csv(ctx.path("branch.csv"),
                  {"control", "period", "u_section", "multiplier", "stability"});
    for (const auto& orb : br.points)
        csv.row({fmt_g17(orb.control), fmt_g17(orb.period), fmt_g17(orb.u_section),
                 fmt_g17(orb.multiplier), orb.stable ? "stable" : "unstable"});
    ctx.produced("branch.csv");
    if (br.snlc) {
        CsvWriter th(ctx.path("thresholds.csv"), {"kind", "control", "value", "u", "v"});
        th.row({br.snlc->kind, br.snlc->control, fmt_g17(br.snlc->value), fmt_g17(br.snlc->u),
                fmt_g17(br.snlc->v)});
        ctx.produced("thresholds.csv");
    }
    if (br.points.empty())
        throw std::runtime_error("cycles: no periodic orbit converged (" + br.note + ")");
}

// ----------------------------------------------------------------------- ode

void task_ode(TaskContext& ctx) {
    const Scenario& sc = ctx.sc;
    const State ic{sc.require_num("ode", "u0"), sc.require_num("ode", "v0")};
    const double t_end = sc.get_num("ode", "t_end", 1000.0);
    const double rel_tol = sc.get_num("ode", "rel_tol", 1e-10);
    const double dt_out = sc.get_num("ode", "dt_out", 0.1);

    const Trajectory tr = solve_ode(ctx.p, ic, t_end, rel_tol, dt_out);
    CsvWriter csv(ctx.path("trajectory.csv"), {"t", "u", "v"});
    for (std::size_t i = 0; i < tr.t.size(); ++i)
        csv.row({fmt_g17(tr.t[i]), fmt_g17(tr.states[i].u), fmt_g17(tr.states[i].v)});
    ctx.produced("trajectory.csv");
    if (tr.status != OdeStatus::done)
        throw std::runtime_error(std::string("ode integration failed: ") +
                                 ode_status_text(tr.status));
}

// ----------------------------------------------------------------- transient

void task_transient(TaskContext& ctx) {
    const Scenario& sc = ctx.sc;
    const State ic{sc.require_num("transient", "u0"), sc.require_num("transient", "v0")};
    const double delta = sc.get_num("transient", "delta", 1e-2);
    const double t_max = sc.get_num("transient", "t_max", 1e5);
    std::vector<double> fs =
        sc.has("transient", "f") ? sc.get_values("transient", "f") : std::vector<double>{ctx.p.f};

    GhostSpec ghost;
    const std::string kind = sc.get_str("transient", "ghost", "sn");
    if (kind == "sn") {
        const auto sns = saddle_node_thresholds(ctx.p, "f");
        if (sns.empty())
            throw std::runtime_error("transient: no saddle-node threshold to serve as ghost");
        double mid = 0;
        for (double f : fs) mid += f;
        mid /= fs.size();
        const std::string pick = sc.get_str("transient", "ghost_pick", "nearest");
        const ThresholdResult* best = nullptr;
        for (const auto& sn : sns) {
            if (pick == "nearest") {
                if (!best || std::abs(sn.value - mid) < std::abs(best->value - mid)) best = &sn;
            } else if (sn.kind == (pick == "sn1" ? "SN1" : "SN2")) {
                best = &sn;
            }
        }
        if (!best) throw std::runtime_error("transient: requested saddle-node '" + pick +
                                            "' not found");
        ghost.kind = GhostSpec::Kind::point;
        ghost.point = {best->u, best->v};
    } else if (kind == "cycle") {
        const double f_lo = sc.require_num("transient", "f_lo");
        const double f_hi = sc.require_num("transient", "f_hi");
        const double f_start = sc.require_num("transient", "f_start");
        const State seed_ic{sc.get_num("transient", "seed_u0", ic.u),
                            sc.get_num("transient", "seed_v0", ic.v)};
        const CycleBranch br = cycle_branch(ctx.p, f_lo, f_hi, f_start, seed_ic, false);
        if (br.dead_cycle.empty())
            throw std::runtime_error("transient: cycle branch found no fold of limit cycles (" +
                                     br.note + ")");
        ghost.kind = GhostSpec::Kind::cycle;
        ghost.polyline = br.dead_cycle;
    } else {
        throw ScenarioError("transient: ghost must be 'sn' or 'cycle'");
    }

    CsvWriter csv(ctx.path("transient.csv"), {"f", "delta", "dwell", "final_label"});
    for (double f : fs) {
        Params p2 = ctx.p;
        p2.f = f;
        const TransientReport rep = transient_time(p2, ic, delta, ghost, t_max);
        csv.row({fmt_g17(f), fmt_g17(delta), fmt_g17(rep.dwell), rep.final_label.name()});
    }
    ctx.produced("transient.csv");
}

// ---------------------------------------------------------------- dispersion

void task_dispersion(TaskContext& ctx) {
    const Equilibrium eq = first_interior(ctx.p, "dispersion");
    double k_max = ctx.sc.get_num("dispersion", "k_max", 0);
    if (k_max <= 0) {
        try {
            const TuringPoint tp = turing_threshold(ctx.p, State{eq.u, eq.v});
            k_max = 4.0 * tp.k_T * tp.k_T;
        } catch (const std::domain_error&) {
            k_max = 1.0;
        }
    }
    const int n = ctx.sc.get_int("dispersion", "n", 400);
    if (n < 2) throw ScenarioError("dispersion: n must be at least 2");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = k_max * i / (n - 1);
    const DispersionResult dr = dispersion(ctx.p, State{eq.u, eq.v}, grid);
    CsvWriter csv(ctx.path("dispersion.csv"), {"k", "T", "H", "re_lambda"});
    for (int i = 0; i < n; ++i)
        csv.row({fmt_g17(dr.k[i]), fmt_g17(dr.T[i]), fmt_g17(dr.H[i]), fmt_g17(dr.re_lambda[i])});
    ctx.produced("dispersion.csv");
}

// -------------------------------------------------------------------- turing

void task_turing(TaskContext& ctx) {
    const Equilibrium eq = first_interior(ctx.p, "turing");
    const TuringPoint tp = turing_threshold(ctx.p, State{eq.u, eq.v});
    CsvWriter csv(ctx.path("turing.csv"), {"c_T", "k_T", "region", "u", "v"});
    csv.row({fmt_g17(tp.c_T), fmt_g17(tp.k_T), to_string(tp.region), fmt_g17(eq.u),
             fmt_g17(eq.v)});
    ctx.produced("turing.csv");
}

// ------------------------------------------------------------------- surface

void task_surface(TaskContext& ctx) {
    const std::vector<double> fs = ctx.sc.get_values("surface", "f");
    const std::vector<double> ds = ctx.sc.get_values("surface", "d");
    CsvWriter csv(ctx.path("surface.csv"), {"f", "d", "c_T", "k_T"});
    for (double f : fs)
        for (double d : ds) {
            Params p2 = ctx.p;
            p2.f = f;
            p2.d = d;
            std::string ct, kt;
            const auto inter = find_equilibria(p2).interior();
            if (!inter.empty()) {
                try {
                    const TuringPoint tp =
                        turing_threshold(p2, State{inter.front().u, inter.front().v});
                    ct = fmt_g17(tp.c_T);
                    kt = fmt_g17(tp.k_T);
                } catch (const std::domain_error&) {
                    // unstable base state: no threshold to report
                }
            }
            csv.row({fmt_g17(f), fmt_g17(d), ct, kt});
        }
    ctx.produced("surface.csv");
}

// ----------------------------------------------------------------------- pde

void task_pde(TaskContext& ctx) {
    const Scenario& sc = ctx.sc;
    Params p = ctx.p;

    std::optional<TuringPoint> tp;
    auto turing = [&]() -> const TuringPoint& {
        if (!tp) {
            const Equilibrium eq = first_interior(p, "pde");
            tp = turing_threshold(p, State{eq.u, eq.v});
        }
        return *tp;
    };

    GridSpec g;
    g.N = sc.get_int("pde", "N", g.N);
    double L = sc.get_num("pde", "L", 0);
    const double wavelengths = sc.get_num("pde", "wavelengths", 0);
    if (L <= 0) L = wavelengths > 0 ? wavelengths * 2.0 * M_PI / turing().k_T : GridSpec{}.L;
    g.L = L;

    PdeOptions opts;
    opts.t_end = sc.get_num("pde", "t_end", opts.t_end);
    opts.rel_tol = sc.get_num("pde", "rel_tol", opts.rel_tol);
    opts.frame_interval = sc.get_num("pde", "frame_interval", opts.frame_interval);
    opts.upwind_taxis = sc.get_bool("pde", "upwind", opts.upwind_taxis);
    opts.stop_when_steady = sc.get_bool("pde", "stop_when_steady", opts.stop_when_steady);

    State base;
    if (sc.has("pde", "u0") || sc.has("pde", "v0")) {
        base = {sc.require_num("pde", "u0"), sc.require_num("pde", "v0")};
    } else {
        const std::string bk = sc.get_str("pde", "base", "eq");
        if (bk == "axial") {
            base = {1.0, 0.0};
        } else if (bk == "eq") {
            const Equilibrium eq = first_interior(p, "pde");
            base = {eq.u, eq.v};
        } else {
            throw ScenarioError("pde: base must be 'eq', 'axial', or explicit u0/v0");
        }
    }

    const std::string ic_kind = sc.get_str("pde", "ic", "noise");
    const double amp = sc.get_num("pde", "amp", 0.01);
    Field1D ic;
    if (ic_kind == "noise") {
        ic = noisy_homogeneous_ic(g, base, amp, ctx.seed);
    } else if (ic_kind == "window") {
        ic = windowed_noise_ic(g, base, amp, sc.get_num("pde", "x_lo", g.L / 4),
                               sc.get_num("pde", "x_hi", 3 * g.L / 4), ctx.seed);
    } else if (ic_kind == "mode") {
        double wn = sc.get_num("pde", "wavenumber", 0);
        if (wn <= 0) wn = turing().k_T;
        ic = single_mode_ic(g, base, wn, sc.get_num("pde", "amp_u", amp),
                            sc.get_num("pde", "amp_v", 0.0));
    } else if (ic_kind == "uniform") {
        ic = noisy_homogeneous_ic(g, base, 0.0, ctx.seed);
    } else {
        throw ScenarioError("pde: ic must be noise, window, mode, or uniform");
    }

    const PdeResult r = simulate_pde(p, g, ic, opts);

    {
        CsvWriter csv(ctx.path("frames.csv"), {"t", "x", "u", "v"});
        for (const auto& fr : r.frames) {
            const std::string ts = fmt_g17(fr.t);
            for (int i = 0; i < g.N; ++i)
                csv.row({ts, fmt_g17(g.center(i)), fmt_g17(fr.u[i]), fmt_g17(fr.v[i])});
        }
        ctx.produced("frames.csv");
    }
    {
        std::vector<std::vector<double>> uimg, vimg;
        uimg.reserve(r.frames.size());
        vimg.reserve(r.frames.size());
        for (const auto& fr : r.frames) {
            uimg.push_back(fr.u);
            vimg.push_back(fr.v);
        }
        write_pgm(ctx.path("u.pgm"), uimg);
        write_pgm(ctx.path("v.pgm"), vimg);
        ctx.produced("u.pgm");
        ctx.produced("u.pgm.txt");
        ctx.produced("v.pgm");
        ctx.produced("v.pgm.txt");
    }
    {
        const double t_cut = sc.get_num("pde", "t_cutoff", opts.t_end / 2);
        const FieldStats st = field_statistics(r.frames, g, t_cut);
        CsvWriter csv(ctx.path("stats.csv"),
                      {"mean_u", "mean_v", "peak_to_peak_u", "peak_to_peak_v", "spatial_std_u",
                       "temporal_std_mean_u", "dominant_mode", "dominant_wavenumber",
                       "dominant_amplitude", "steady", "t_final", "n_steps"});
        csv.row({fmt_g17(st.mean_u), fmt_g17(st.mean_v), fmt_g17(st.peak_to_peak_u),
                 fmt_g17(st.peak_to_peak_v), fmt_g17(st.spatial_std_u),
                 fmt_g17(st.temporal_std_mean_u), std::to_string(st.dominant_mode),
                 fmt_g17(st.dominant_wavenumber), fmt_g17(st.dominant_amplitude),
                 r.steady ? "1" : "0", fmt_g17(r.t_final), std::to_string(r.n_steps)});
        ctx.produced("stats.csv");
    }
    if (r.aborted) throw std::runtime_error("pde run aborted: " + r.abort_reason);
    if (r.status == OdeStatus::step_underflow || r.status == OdeStatus::too_many_steps)
        throw std::runtime_error(std::string("pde integration failed: ") +
                                 ode_status_text(r.status));
}

// ----------------------------------------------------------------------- wna

void task_wna(TaskContext& ctx) {
    const Scenario& sc = ctx.sc;
    WnaResult w;
    try {
        w = wna_analysis(ctx.p);
    } catch (const std::domain_error& ex) {
        throw std::runtime_error(std::string("wna: ") + ex.what());
    }
    const auto fold = hysteresis_fold(w);
    {
        CsvWriter csv(ctx.path("wna.csv"),
                      {"c_T", "k_T", "u", "v", "phi", "psi", "sigma", "ell", "sigma_p", "ell_p",
                       "rho_p", "c_fold", "max_residual", "fredholm"});
        csv.row({fmt_g17(w.turing.c_T), fmt_g17(w.turing.k_T), fmt_g17(w.eq.u), fmt_g17(w.eq.v),
                 fmt_g17(w.w.phi), fmt_g17(w.w.psi), fmt_g17(w.amp.sigma), fmt_g17(w.amp.ell),
                 fmt_g17(w.amp.sigma_p), fmt_g17(w.amp.ell_p), fmt_g17(w.amp.rho_p),
                 fold ? fmt_g17(*fold) : "", fmt_g17(w.w.max_residual), fmt_g17(w.w.fredholm)});
        ctx.produced("wna.csv");
    }

    std::vector<double> cs;
    if (sc.has("wna", "c")) {
        cs = sc.get_values("wna", "c");
    } else {
        const double lo = fold ? 0.97 * *fold : 0.85 * w.turing.c_T;
        const double hi = 1.15 * w.turing.c_T;
        const int n = 121;
        for (int i = 0; i < n; ++i) cs.push_back(lo + (hi - lo) * i / (n - 1));
    }

    // One row per branch per c: the pattern's u at x=0 under the stable
    // (A_stable) or unstable (A_unstable) amplitude root, plus the uniform
    // state itself, which hands stability to the pattern at c_T.
    CsvWriter csv(ctx.path("amplitude.csv"), {"c", "A_stable", "A_unstable", "branch"});
    for (double c : cs) {
        const AmplitudeRoots roots = amplitude_roots(w, c);
        for (int sign : {+1, -1}) {
            std::string stable_cell, unstable_cell;
            if (roots.alpha_stable)
                stable_cell = fmt_g17(reconstruct_at(w, c, sign * *roots.alpha_stable).u_at(0));
            if (roots.alpha_unstable)
                unstable_cell =
                    fmt_g17(reconstruct_at(w, c, sign * *roots.alpha_unstable).u_at(0));
            if (stable_cell.empty() && unstable_cell.empty()) continue;
            csv.row({fmt_g17(c), stable_cell, unstable_cell, sign > 0 ? "upper" : "lower"});
        }
        const bool uniform_stable = c < w.turing.c_T;
        csv.row({fmt_g17(c), uniform_stable ? fmt_g17(w.eq.u) : "",
                 uniform_stable ? "" : fmt_g17(w.eq.u), "hss"});
    }
    ctx.produced("amplitude.csv");
}

// --------------------------------------------------------------------- sweep

void task_sweep(TaskContext& ctx) {
    const SweepOutcome oc = run_sweep(ctx.sc, ctx.p, ctx.out, ctx.seed, ctx.workers);
    for (const auto& f : oc.outputs) ctx.manifest->outputs.push_back(f);
    ctx.manifest->failures = oc.failures;
    if (!oc.failures.empty())
        std::cerr << "ecopattern: sweep finished with " << oc.failures.size() << " of "
                  << oc.n_jobs << " jobs failed (see manifest)\n";
}

using TaskFn = void (*)(TaskContext&);

const std::map<std::string, TaskFn>& registry() {
    static const std::map<std::string, TaskFn> reg = {
        {"equilibria", task_equilibria}, {"bifurcate", task_bifurcate},
        {"codim2", task_codim2},         {"cycles", task_cycles},
        {"ode", task_ode},               {"transient", task_transient},
        {"dispersion", task_dispersion}, {"turing", task_turing},
        {"surface", task_surface},       {"pde", task_pde},
        {"wna", task_wna},               {"sweep", task_sweep},
    };
    return reg;
}

}  // namespace

int run_scenario(const std::string& scenario_path, const CliOverrides& ov) {
    Scenario sc;
    Params p;
    std::string task, out;
    std::uint64_t seed = 0;
    int workers = 1;
    try {
        sc = parse_scenario_file(scenario_path);
        const std::string sc_task = sc.task();
        task = !ov.task.empty() ? ov.task : sc_task;
        if (task.empty())
            throw ScenarioError("no task given (positional argument or 'task =' key)");
        if (!ov.task.empty() && !sc_task.empty() && ov.task != sc_task)
            throw ScenarioError("task '" + ov.task + "' conflicts with scenario task '" +
                                sc_task + "'");
        if (!registry().count(task)) throw ScenarioError("unknown task '" + task + "'");
        p = sc.params();
        seed = ov.seed_set ? ov.seed : sc.get_u64("", "seed", 1);
        int envw = 0;
        if (const char* env = std::getenv("ECOPATTERN_WORKERS")) {
            char* end = nullptr;
            const long x = std::strtol(env, &end, 10);
            if (end && *end == '\0' && x > 0) envw = static_cast<int>(x);
        }
        workers = ov.workers > 0 ? ov.workers
                  : envw > 0    ? envw
                                : sc.get_int("sweep", "workers", 0);
        if (workers <= 0) workers = std::max(1u, std::thread::hardware_concurrency());
        out = !ov.out_dir.empty() ? ov.out_dir : sc.get_str("", "out", "out_" + task);
    } catch (const ScenarioError& ex) {
        std::cerr << "ecopattern: " << ex.what() << '\n';
        return kExitParseError;
    }

    ManifestInfo info;
    info.task = task;
    info.scenario_file = scenario_path;
    info.scenario = sc.sections;
    info.params = {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}, {"e", p.e}, {"f", p.f}};
    info.seed = seed;
    info.workers = workers;

    int code = kExitOk;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ensure_directory(out);
        TaskContext ctx{sc, p, out, seed, workers, &info};
        registry().at(task)(ctx);
    } catch (const ScenarioError& ex) {
        // bad task options are configuration errors, not numerical ones
        std::cerr << "ecopattern: " << ex.what() << '\n';
        return kExitParseError;
    } catch (const std::exception& ex) {
        info.status = std::string("error: ") + ex.what();
        std::cerr << "ecopattern: " << ex.what() << '\n';
        code = kExitNumericalError;
    }
    info.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
        write_manifest(out, info);
    } catch (const std::exception& ex) {
        std::cerr << "ecopattern: " << ex.what() << '\n';
        if (code == kExitOk) code = kExitNumericalError;
    }
    return code;
}

int run_render(const std::string& dir) {
    try {
        const auto files = render_outputs(dir);
        for (const auto& f : files) std::cout << join_path(dir, f) << '\n';
        return kExitOk;
    } catch (const std::exception& ex) {
        std::cerr << "ecopattern: render: " << ex.what() << '\n';
        return kExitParseError;
    }
}

}  // namespace eco
