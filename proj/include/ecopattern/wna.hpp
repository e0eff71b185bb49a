#ifndef ECOPATTERN_WNA_HPP
#define ECOPATTERN_WNA_HPP

#include <array>
#include <optional>
#include <utility>

#include "ecopattern/equilibria.hpp"
#include "ecopattern/params.hpp"
#include "ecopattern/spatial.hpp"

namespace eco {

// Weakly nonlinear expansion about the Turing threshold c = c_T.  The
// perturbation series is carried to fifth order, giving a cubic and a quintic
// Stuart-Landau equation for the pattern amplitude.  Convention: the control
// distance is c = c_T (1 + eps^2), i.e. the second-order control coefficient
// equals c_T, and the time scales are tau = eps^2 t, tau1 = eps^4 t.

// The two third-order systems resonate with the critical mode, so their
// solutions are fixed only up to a multiple of the critical eigenvector.
// The gauge picks that multiple:
//   unit:    first component of the profile pinned to 1
//   zero:    profile Euclidean-orthogonal to the critical eigenvector
//   natural: no spectral component along the critical eigenvector
enum class W3Gauge { unit, zero, natural };

// dA/dtau = sigma A - ell A^3;  dA/dtau1 = sigma_p A - ell_p A^3 + rho_p A^5.
// Combined at distance eps^2: d A/dt = eps^2 (sigma_hat A - ell_hat A^3 +
// rho_hat A^5) with sigma_hat = sigma + eps^2 sigma_p, ell_hat = ell + eps^2
// ell_p, rho_hat = eps^2 rho_p.
struct AmplitudeModel {
    double sigma = 0, ell = 0;
    double sigma_p = 0, ell_p = 0, rho_p = 0;
    double c2 = 0;  // control-expansion coefficient (c_T under the default convention)
};

// Intermediate 2-vectors of the expansion, kept for inspection and testing.
// Naming: h/k are the second-order forcing/profile, g/C third order, H/D
// fourth order, I fifth order; the first digit is the power of the amplitude,
// the second the cosine harmonic.
struct WnaWorkspace {
    double phi = 0, psi = 0;  // eigenvector components: Phi=(1,phi), Psi=(psi,1)
    Vec2 h20, h22, k20, k22;
    Vec2 g11, g31, g33;
    Vec2 C11, C13, C33;
    Vec2 H20, H22, H40, H42, H44;
    Vec2 D20, D22, D40, D42, D44;
    Vec2 I11, I31, I51;
    double max_residual = 0;   // worst relative residual over all linear solves
    double fredholm = 0;       // worst secular-removed projection on the adjoint
};

struct WnaResult {
    Params p;            // parameters with c set to c_T
    Equilibrium eq;      // patterned steady state (lowest-u coexistence state)
    TuringPoint turing;  // c_T and k_T
    AmplitudeModel amp;
    WnaWorkspace w;
};

// Runs the full expansion at the Turing threshold for p's kinetic parameters
// (p.c is ignored; the analysis sits at c = c_T).  Throws std::domain_error
// when no admissible steady state or Turing point exists.
WnaResult wna_analysis(const Params& p, W3Gauge gauge = W3Gauge::unit);

// Equilibrium amplitudes at taxis strength c, reported in the physical
// (unscaled) amplitude alpha = eps*A of the cos(k_T x) mode.  Works on both
// sides of the threshold; below it the pair (stable, unstable) exists only
// down to the fold.
struct AmplitudeRoots {
    double eps2 = 0;  // (c - c_T)/c2, negative below threshold
    double sigma_hat = 0, ell_hat = 0, rho_hat = 0;
    std::optional<double> alpha_stable;
    std::optional<double> alpha_unstable;
};
AmplitudeRoots amplitude_roots(const WnaResult& w, double c);

// Smallest c at which a finite-amplitude pattern still exists (the amplitude
// fold).  Empty when the bifurcation is supercritical at this point.
std::optional<double> hysteresis_fold(const WnaResult& w);

// Steady pattern reconstructed to third order as a four-term cosine series
// field(x) = q[0] + q[1] cos(k_T x) + q[2] cos(2 k_T x) + q[3] cos(3 k_T x).
struct PatternPrediction {
    double c = 0;
    double eps2 = 0;
    double alpha = 0;  // signed physical amplitude of the critical mode
    double k_T = 0;
    std::array<double, 4> u_coeff = {}, v_coeff = {};
    std::pair<double, double> hysteresis = {0, 0};  // (c_fold, c_T), 0,0 if none
    double residual = 0;  // amplitude-polynomial residual at the used root

    double u_at(double x) const;
    double v_at(double x) const;
    double peak_to_peak_u() const;
    double peak_to_peak_v() const;
};

// Reconstruction at a caller-chosen signed amplitude (used for the unstable
// branch and for seeding simulations).
PatternPrediction reconstruct_at(const WnaResult& w, double c, double alpha);

// Reconstruction at the stable amplitude root; sign +1 picks the branch with
// a prey crest at x=0, -1 the half-wavelength translate.  Throws
// std::domain_error when no stable pattern exists at this c.
PatternPrediction pattern_prediction(const WnaResult& w, double c, int sign = +1);

}  // namespace eco

#endif
