#pragma once

// Long-time integration of the kinetics: trajectory sampling, attractor
// classification (equilibrium / limit cycle / undecided), and dwell-time
// measurement near ghost remnants of saddle-node-destroyed invariant sets.

#include "ecopattern/equilibria.hpp"
#include "ecopattern/ode.hpp"
#include "ecopattern/params.hpp"

#include <string>
#include <vector>

namespace eco {

struct Trajectory {
    std::vector<double> t;
    std::vector<State> states;
    std::size_t n_steps = 0;
    std::size_t n_rejected = 0;
    OdeStatus status = OdeStatus::done;
};

// Sample the kinetics ODE at uniform intervals dt_out (dense output between
// adaptive steps).  Samples always include t0 and t_end.
Trajectory solve_ode(const Params& p, const State& ic, double t_end, double rel_tol = 1e-10,
                     double dt_out = 0.1);

enum class AttractorKind { equilibrium, limit_cycle, undecided };

struct AttractorLabel {
    AttractorKind kind = AttractorKind::undecided;
    int equilibrium_index = -1;  // index into EquilibriumSet::eqs when kind==equilibrium
    State terminal;              // state at decision time (on-section point for cycles)
    double period = 0.0;         // mean of the last 5 Poincare return times
    double t_decided = 0.0;
    std::string name() const;    // "E0", "E1", "E1*", ..., "cycle", "undecided"
};

// Integrate from ic until the trajectory settles onto an equilibrium
// (reaction-rate residual < 1e-8 at 10 consecutive samples spaced 5 time
// units) or closes into a cycle (5 consecutive Poincare returns through the
// section u = u of the nearest interior equilibrium agree to 1e-6), up to
// t_max.
AttractorLabel classify_attractor(const Params& p, const State& ic, double t_max = 1e5);

// Location of a vanished invariant set: the double-root equilibrium at a
// saddle-node threshold, or the dead cycle at a fold of limit cycles
// (stored as a closed polyline in (u,v) space).
struct GhostSpec {
    enum class Kind { point, cycle } kind = Kind::point;
    State point;
    std::vector<State> polyline;  // closed: last point connects back to first
};

struct TransientReport {
    double dwell = 0.0;  // total time spent within delta of the ghost
    double delta = 0.0;
    AttractorLabel final_label;
    double t_total = 0.0;
};

// Dwell time = Lebesgue measure of {t : dist(trajectory(t), ghost) < delta},
// accumulated by dense sampling at dt=0.05 while the classification run from
// classify_attractor proceeds underneath.
TransientReport transient_time(const Params& p, const State& ic, double delta,
                               const GhostSpec& ghost, double t_max = 1e5);

}  // namespace eco
