#pragma once

// Codimension-1 thresholds (transcritical, saddle-node, Hopf, fold of limit
// cycles) and codimension-2 points (cusp, Bautin, Bogdanov-Takens) of the
// kinetics, plus shooting/continuation machinery for periodic orbits.

#include "ecopattern/equilibria.hpp"
#include "ecopattern/params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eco {

struct ThresholdResult {
    std::string kind;     // "TC", "SN1", "SN2", "H", "SNLC", "HOM-proxy"
    std::string control;  // "f" or "b"
    double value = 0;     // critical control value
    double u = 0, v = 0;  // associated state (double root, Hopf equilibrium, section point)
};

// f_TC = e*a/(b+1): the axial state (1,0) exchanges stability with the
// interior branch crossing u=1.
ThresholdResult transcritical_threshold(const Params& p);

// All saddle-node thresholds in the given control ("f" or "b"), each a double
// root of the interior quintic: Q(u_sn)=Q'(u_sn)=0 with 0<u_sn<min(1,u_b) and
// positive predator level.  Labels: when two thresholds exist the one with
// the smaller u_sn is SN1, the larger SN2; a lone threshold is SN1.
std::vector<ThresholdResult> saddle_node_thresholds(const Params& p,
                                                    const std::string& control = "f");

// Hopf threshold of the first interior equilibrium: tr J(E1*(control)) = 0
// with det J > 0, solved by a control-grid scan plus bisection (the inner
// equilibrium solve is repeated at every trial value).  Brackets whose
// bisected point has det<=0 (neutral saddle) are skipped.
std::optional<ThresholdResult> hopf_threshold(const Params& p, const std::string& control,
                                              double lo, double hi);
std::optional<ThresholdResult> hopf_threshold(const Params& p, const std::string& control);

enum class HopfCriticality { supercritical, subcritical, degenerate };

struct HopfClassification {
    double l1 = 0;  // only the sign is normalization-invariant
    HopfCriticality criticality = HopfCriticality::degenerate;
};

// First Lyapunov coefficient at a Hopf threshold, from analytic partials up
// to order 3 after transforming the linear part to [[0,-w],[w,0]].
HopfClassification lyapunov_first_coefficient(const Params& p, const ThresholdResult& hopf);

struct Codim2Point {
    std::string kind;  // "CP", "GH", "BT"
    double f = 0, b = 0;
    double u = 0, v = 0;  // associated equilibrium
};

struct Codim2Window {
    double f_lo = 0.3, f_hi = 2.0;
    double b_lo = 2.0, b_hi = 10.0;
};

// Cusp (double root at u=1 on the transcritical line), Bautin (l1=0 along the
// Hopf curve), and Bogdanov-Takens (tr=det=0) points in the (f,b) plane at
// fixed (a,e).  Points falling outside the window are omitted.
std::vector<Codim2Point> codim2_points(double a, double e, const Codim2Window& win = {});

struct PeriodicOrbit {
    double control = 0;    // control value the orbit lives at
    double period = 0;
    double u_section = 0;  // section location u = u1*(control)
    double v_section = 0;  // orbit's v at the section
    double multiplier = 0; // nontrivial Floquet multiplier (det of monodromy)
    bool stable = false;
    double residual = 0;   // |phi_T(x)-x| after Newton
};

// Polished single-shooting solve at fixed parameters: unknowns (v0, T) with
// the orbit anchored on the section u = u1*.  Returns nullopt on Newton
// failure.  If samples!=nullptr the orbit is additionally sampled at `count`
// uniform times.
std::optional<PeriodicOrbit> shoot_orbit(const Params& p, double v0, double T,
                                         std::vector<State>* samples = nullptr,
                                         std::size_t count = 2048);

// Locate an approximate orbit by integrating from ic (backward=true converges
// onto backward-attracting, i.e. unstable, cycles) and watching returns on
// the section u = u1*.  Returns (v0, period) seed for shoot_orbit.
std::optional<std::pair<double, double>> find_cycle_seed(const Params& p, const State& ic,
                                                         bool backward, double t_budget = 3000);

struct CycleBranch {
    std::vector<PeriodicOrbit> points;        // in continuation order
    std::optional<ThresholdResult> snlc;      // present when the branch folds in the control
    std::vector<State> dead_cycle;            // orbit polyline at the fold (ghost for transients)
    std::string note;                         // why continuation stopped
};

// Pseudo-arclength continuation of a periodic-orbit branch in f, starting
// from a converged orbit at f_start (seeded from seed_ic; backward seeding
// picks up unstable cycles).  Continuation starts toward decreasing f when
// go_down is true, follows the branch around folds, and stops at the range
// boundary, on a period above period_cap (homoclinic proxy), when the orbit
// amplitude collapses into the Hopf equilibrium, or on repeated Newton
// failure.
CycleBranch cycle_branch(const Params& p, double f_lo, double f_hi, double f_start,
                         const State& seed_ic, bool seed_backward, bool go_down = true,
                         int max_points = 4000, double period_cap = 500.0);

// Proxy for a homoclinic threshold: bisection on attractor classification
// between a control value where a stable cycle is observed from ic and one
// where it is not (cycle death without a fold).
std::optional<ThresholdResult> hom_proxy_threshold(const Params& p, double f_cycle,
                                                   double f_no_cycle, const State& ic,
                                                   double t_max = 5000, double tol = 1e-4);

}  // namespace eco
