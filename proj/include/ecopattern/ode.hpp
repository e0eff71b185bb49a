#pragma once

// Adaptive Dormand-Prince 5(4) integrator with 4th-order dense output.
// Written against a generic RHS of fixed small dimension (std::vector state)
// so the same stepper drives the 2-d kinetics, the 6-d variational system
// used for Floquet multipliers, and the 2N-d method-of-lines PDE.

#include <cstddef>
#include <functional>
#include <vector>

namespace eco {

// Right-hand side: dy/dt = f(t, y, dydt).  dydt is pre-sized to y.size().
using OdeRhs = std::function<void(double, const std::vector<double>&, std::vector<double>&)>;

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 1e-4;
    double max_step = 1.0;       // hard cap on |dt|
    double min_step = 1e-14;     // below this the step controller gives up
    std::size_t max_steps = 50'000'000;
    // Reject any accepted step that drives a component below -1e-12; values in
    // [-1e-12, 0) are snapped to zero.  Disable for systems (variational
    // equations) whose components are legitimately signed.
    bool enforce_nonnegative = false;
};

enum class OdeStatus {
    done,          // reached t_end
    halted,        // observer requested stop
    step_underflow,
    too_many_steps,
};

// Dense-output segment for one accepted step: evaluates the 4th-order
// interpolant anywhere in [t0, t0+h].
struct DenseSegment {
    double t0 = 0, h = 0;
    std::vector<double> rcont1, rcont2, rcont3, rcont4, rcont5;
    void eval(double t, std::vector<double>& y) const;
    double eval_component(double t, std::size_t i) const;
};

// Observer is called after every accepted step with the dense segment for
// that step; return false to halt integration.
using OdeObserver = std::function<bool(const DenseSegment&, const std::vector<double>& y, double t)>;

struct OdeResult {
    OdeStatus status = OdeStatus::done;
    double t = 0;
    std::vector<double> y;
    std::size_t n_steps = 0;
    std::size_t n_rejected = 0;
};

OdeResult integrate(const OdeRhs& rhs, std::vector<double> y0, double t0, double t_end,
                    const OdeOptions& opts, const OdeObserver& observer = nullptr);

// Fixed-step helper (used by the convergence-order test): runs the same
// tableau with error control disabled.
OdeResult integrate_fixed(const OdeRhs& rhs, std::vector<double> y0, double t0, double t_end,
                          double dt);

}  // namespace eco
