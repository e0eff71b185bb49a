#ifndef ECOPATTERN_EQUILIBRIA_HPP
#define ECOPATTERN_EQUILIBRIA_HPP

#include <complex>
#include <string>
#include <vector>

#include "ecopattern/kinetics.hpp"

namespace eco {

enum class EqKind { trivial, axial, interior };

enum class Stability {
    stable_node,
    stable_focus,
    saddle,
    unstable_node,
    unstable_focus,
    non_hyperbolic
};

const char* to_string(EqKind k);
const char* to_string(Stability s);

struct Equilibrium {
    EqKind kind = EqKind::interior;
    double u = 0, v = 0;
    std::complex<double> lam1, lam2;
    Stability stability = Stability::non_hyperbolic;
    bool degenerate = false;  // double root of Q (saddle-node point)
};

// Always contains E0 = (0,0) and E1 = (1,0) first, then the coexisting
// equilibria sorted by increasing u (the labels E1*, E2*, E3* follow that
// order).
struct EquilibriumSet {
    std::vector<Equilibrium> eqs;
    // interior equilibria only, in increasing u
    std::vector<Equilibrium> interior() const;
};

// Classifies an equilibrium from its Jacobian eigenvalues.  Real parts within
// 1e-9 of zero give the non-hyperbolic label.
Stability classify_eigenvalues(std::complex<double> l1, std::complex<double> l2);

// Roots of Q via the eigenvalues of the degree-5 companion matrix, polished
// with Newton; coexistence requires v* = e a u/(1+b u^2) - f > 1e-12 and
// u* < 1.  Near-double roots (|Q'| < 1e-10) collapse to a single equilibrium
// flagged degenerate.
EquilibriumSet find_equilibria(const Params& p);

// Eigenvalues + stability label for an arbitrary state treated as an
// equilibrium of the reaction terms.
Equilibrium classify_state(const Params& p, const State& s, EqKind kind);

}  // namespace eco

#endif
