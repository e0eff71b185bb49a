#include "ecopattern/attractor.hpp"

#include "ecopattern/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace eco {

namespace {

OdeRhs kinetics_rhs(const Params& p) {
    return [p](double, const std::vector<double>& y, std::vector<double>& dydt) {
        const Vec2 r = reaction_rates_raw(p, y[0], y[1]);
        dydt[0] = r.x;
        dydt[1] = r.y;
    };
}

OdeOptions kinetics_options(double rel_tol) {
    OdeOptions o;
    o.rel_tol = rel_tol;
    o.abs_tol = 1e-12;
    o.max_step = 1.0;
    o.enforce_nonnegative = true;
    return o;
}

// Poincare-return bookkeeping for one section u = u_sec, downward crossings
// (du/dt < 0).  A converging focus also produces near-identical returns, so a
// candidate cycle is accepted only if it crosses the section at finite
// distance from the section's own equilibrium.
struct SectionTracker {
    double u_sec = 0;
    double v_eq = 0;
    std::deque<std::pair<double, double>> returns;  // (t, v) at crossing

    // Returns true when the last 5 consecutive returns agree to 1e-6.
    bool add_crossing(double t, double v) {
        returns.emplace_back(t, v);
        if (returns.size() > 6) returns.pop_front();
        if (returns.size() < 6) return false;
        for (std::size_t i = 1; i < returns.size(); ++i)
            if (std::abs(returns[i].second - returns[i - 1].second) > 1e-6) return false;
        return std::abs(returns.back().second - v_eq) > 1e-4;
    }
    double period() const { return (returns.back().first - returns.front().first) / 5.0; }
};

// Shared engine: settle detection (rates < 1e-8 at 10 consecutive samples
// spaced 5 time units) plus cycle detection on a section through each
// interior equilibrium.
struct Classifier {
    const Params& p;
    EquilibriumSet eqs;
    std::vector<SectionTracker> sections;
    double next_settle_t = 5.0;
    int settle_count = 0;
    double prev_u = 0;
    bool have_prev = false;

    AttractorLabel label;
    bool decided = false;

    explicit Classifier(const Params& p_) : p(p_), eqs(find_equilibria(p_)) {
        for (const auto& e : eqs.eqs)
            if (e.kind == EqKind::interior) sections.push_back({e.u, e.v, {}});
    }

    void settle_decision(const State& s, double t) {
        label.kind = AttractorKind::equilibrium;
        label.terminal = s;
        label.t_decided = t;
        double best = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < eqs.eqs.size(); ++i) {
            const double du = eqs.eqs[i].u - s.u, dv = eqs.eqs[i].v - s.v;
            const double d2 = du * du + dv * dv;
            if (d2 < best) {
                best = d2;
                label.equilibrium_index = int(i);
            }
        }
        decided = true;
    }

    void observe(const DenseSegment& seg, const std::vector<double>& y, double t) {
        // settle samples at t = 5, 10, 15, ...
        while (!decided && next_settle_t <= t + 1e-12) {
            const double u = seg.eval_component(next_settle_t, 0);
            const double v = seg.eval_component(next_settle_t, 1);
            const Vec2 r = reaction_rates_raw(p, u, v);
            if (std::max(std::abs(r.x), std::abs(r.y)) < 1e-8) {
                if (++settle_count >= 10) {
                    settle_decision({u, v}, next_settle_t);
                    return;
                }
            } else {
                settle_count = 0;
            }
            next_settle_t += 5.0;
        }
        // section crossings
        if (have_prev) {
            for (auto& sec : sections) {
                if (!(prev_u > sec.u_sec && y[0] <= sec.u_sec)) continue;
                // bisect the dense interpolant for the crossing time
                double lo = seg.t0, hi = seg.t0 + seg.h;
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (seg.eval_component(mid, 0) > sec.u_sec)
                        lo = mid;
                    else
                        hi = mid;
                }
                const double tc = 0.5 * (lo + hi);
                const double vc = seg.eval_component(tc, 1);
                if (sec.add_crossing(tc, vc)) {
                    label.kind = AttractorKind::limit_cycle;
                    label.period = sec.period();
                    label.terminal = {sec.u_sec, vc};
                    label.t_decided = tc;
                    decided = true;
                    return;
                }
            }
        }
        prev_u = y[0];
        have_prev = true;
    }
};

// Accelerated "is this state within delta of the ghost?" test.  For a point
// ghost this is a single distance; for a dead-cycle polyline the points are
// bucketed on a uniform grid so each query touches only nearby buckets.
struct GhostDistance {
    const GhostSpec& ghost;
    double delta;
    // grid over the polyline bounding box
    double u0 = 0, v0 = 0, cell = 1;
    int nu = 1, nv = 1, reach = 1;
    std::vector<std::vector<int>> buckets;

    GhostDistance(const GhostSpec& g, double d) : ghost(g), delta(d) {
        if (ghost.kind != GhostSpec::Kind::cycle || ghost.polyline.empty()) return;
        double u1 = -1e300, v1 = -1e300;
        u0 = v0 = 1e300;
        for (const auto& s : ghost.polyline) {
            u0 = std::min(u0, s.u);
            v0 = std::min(v0, s.v);
            u1 = std::max(u1, s.u);
            v1 = std::max(v1, s.v);
        }
        const double span = std::max({u1 - u0, v1 - v0, 1e-6});
        cell = span / 64.0;
        nu = int((u1 - u0) / cell) + 2;
        nv = int((v1 - v0) / cell) + 2;
        reach = int(delta / cell) + 1;
        buckets.assign(std::size_t(nu) * nv, {});
        for (std::size_t i = 0; i < ghost.polyline.size(); ++i) {
            const int iu = int((ghost.polyline[i].u - u0) / cell);
            const int iv = int((ghost.polyline[i].v - v0) / cell);
            buckets[std::size_t(iv) * nu + iu].push_back(int(i));
        }
    }

    bool within(double u, double v) const {
        if (ghost.kind == GhostSpec::Kind::point) {
            const double du = u - ghost.point.u, dv = v - ghost.point.v;
            return du * du + dv * dv < delta * delta;
        }
        const int iu = int(std::floor((u - u0) / cell));
        const int iv = int(std::floor((v - v0) / cell));
        const double d2 = delta * delta;
        for (int jv = std::max(0, iv - reach); jv <= std::min(nv - 1, iv + reach); ++jv)
            for (int ju = std::max(0, iu - reach); ju <= std::min(nu - 1, iu + reach); ++ju)
                for (int idx : buckets[std::size_t(jv) * nu + ju]) {
                    const double du = u - ghost.polyline[std::size_t(idx)].u;
                    const double dv = v - ghost.polyline[std::size_t(idx)].v;
                    if (du * du + dv * dv < d2) return true;
                }
        return false;
    }
};

}  // namespace

std::string AttractorLabel::name() const {
    switch (kind) {
        case AttractorKind::undecided: return "undecided";
        case AttractorKind::limit_cycle: return "cycle";
        case AttractorKind::equilibrium:
            if (equilibrium_index == 0) return "E0";
            if (equilibrium_index == 1) return "E1";
            if (equilibrium_index > 1)
                return "E" + std::to_string(equilibrium_index - 1) + "*";
            return "eq?";
    }
    return "?";
}

Trajectory solve_ode(const Params& p, const State& ic, double t_end, double rel_tol,
                     double dt_out) {
    p.require_valid();
    Trajectory traj;
    traj.t.push_back(0.0);
    traj.states.push_back(ic);
    double next_t = dt_out;
    auto obs = [&](const DenseSegment& seg, const std::vector<double>&, double t) {
        while (next_t <= t + 1e-12 && next_t < t_end) {
            traj.t.push_back(next_t);
            traj.states.push_back({seg.eval_component(next_t, 0), seg.eval_component(next_t, 1)});
            next_t += dt_out;
        }
        return true;
    };
    OdeResult r =
        integrate(kinetics_rhs(p), {ic.u, ic.v}, 0.0, t_end, kinetics_options(rel_tol), obs);
    if (traj.t.back() < t_end && r.status == OdeStatus::done) {
        traj.t.push_back(r.t);
        traj.states.push_back({r.y[0], r.y[1]});
    }
    traj.n_steps = r.n_steps;
    traj.n_rejected = r.n_rejected;
    traj.status = r.status;
    return traj;
}

AttractorLabel classify_attractor(const Params& p, const State& ic, double t_max) {
    p.require_valid();
    Classifier cls(p);
    auto obs = [&](const DenseSegment& seg, const std::vector<double>& y, double t) {
        cls.observe(seg, y, t);
        return !cls.decided;
    };
    OdeResult r = integrate(kinetics_rhs(p), {ic.u, ic.v}, 0.0, t_max, kinetics_options(1e-10), obs);
    if (!cls.decided) {
        cls.label.kind = AttractorKind::undecided;
        cls.label.terminal = {r.y[0], r.y[1]};
        cls.label.t_decided = r.t;
    }
    return cls.label;
}

TransientReport transient_time(const Params& p, const State& ic, double delta,
                               const GhostSpec& ghost, double t_max) {
    p.require_valid();
    if (!(delta > 0)) throw std::invalid_argument("transient_time: delta must be positive");
    TransientReport rep;
    rep.delta = delta;
    Classifier cls(p);
    GhostDistance gd(ghost, delta);
    const double dt = 0.05;
    double next_t = 0.0;
    auto obs = [&](const DenseSegment& seg, const std::vector<double>& y, double t) {
        while (next_t <= t + 1e-12) {
            if (gd.within(seg.eval_component(next_t, 0), seg.eval_component(next_t, 1)))
                rep.dwell += dt;
            next_t += dt;
        }
        cls.observe(seg, y, t);
        return !cls.decided;
    };
    OdeResult r = integrate(kinetics_rhs(p), {ic.u, ic.v}, 0.0, t_max, kinetics_options(1e-10), obs);
    if (!cls.decided) {
        cls.label.kind = AttractorKind::undecided;
        cls.label.terminal = {r.y[0], r.y[1]};
        cls.label.t_decided = r.t;
    }
    rep.final_label = cls.label;
    rep.t_total = r.t;
    return rep;
}

}  // namespace eco
