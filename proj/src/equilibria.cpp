#include "ecopattern/equilibria.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace eco {

const char* to_string(EqKind k) {
    switch (k) {
        case EqKind::trivial: return "trivial";
        case EqKind::axial: return "axial";
        case EqKind::interior: return "interior";
    }
    return "?";
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::stable_node: return "stable-node";
        case Stability::stable_focus: return "stable-focus";
        case Stability::saddle: return "saddle";
        case Stability::unstable_node: return "unstable-node";
        case Stability::unstable_focus: return "unstable-focus";
        case Stability::non_hyperbolic: return "non-hyperbolic";
    }
    return "?";
}

Stability classify_eigenvalues(std::complex<double> l1, std::complex<double> l2) {
    const double tol = 1e-9;
    if (std::abs(l1.real()) < tol || std::abs(l2.real()) < tol)
        return Stability::non_hyperbolic;
    const bool complex_pair = std::abs(l1.imag()) > tol;
    if (l1.real() < 0 && l2.real() < 0)
        return complex_pair ? Stability::stable_focus : Stability::stable_node;
    if (l1.real() > 0 && l2.real() > 0)
        return complex_pair ? Stability::unstable_focus : Stability::unstable_node;
    return Stability::saddle;
}

Equilibrium classify_state(const Params& p, const State& s, EqKind kind) {
    Equilibrium eq;
    eq.kind = kind;
    eq.u = s.u;
    eq.v = s.v;
    const Jacobian2 j = jacobian(p, s);
    const double tr = j.trace();
    const double det = j.det();
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0) {
        const double root = std::sqrt(disc);
        eq.lam1 = std::complex<double>((tr - root) / 2.0, 0.0);
        eq.lam2 = std::complex<double>((tr + root) / 2.0, 0.0);
    } else {
        const double root = std::sqrt(-disc);
        eq.lam1 = std::complex<double>(tr / 2.0, -root / 2.0);
        eq.lam2 = std::complex<double>(tr / 2.0, root / 2.0);
    }
    eq.stability = classify_eigenvalues(eq.lam1, eq.lam2);
    return eq;
}

std::vector<Equilibrium> EquilibriumSet::interior() const {
    std::vector<Equilibrium> out;
    for (const auto& e : eqs)
        if (e.kind == EqKind::interior) out.push_back(e);
    return out;
}

EquilibriumSet find_equilibria(const Params& p) {
    p.require_valid();
    EquilibriumSet set;
    set.eqs.push_back(classify_state(p, {0.0, 0.0}, EqKind::trivial));
    set.eqs.push_back(classify_state(p, {1.0, 0.0}, EqKind::axial));

    const QuinticPoly q = quintic_coefficients(p);

    // Companion matrix of the monic polynomial Q/b^2; its eigenvalues are the
    // roots of Q.  Deterministic and complete, unlike local iteration.
    Eigen::Matrix<double, 5, 5> comp = Eigen::Matrix<double, 5, 5>::Zero();
    for (int i = 0; i < 4; ++i) comp(i + 1, i) = 1.0;
    for (int i = 0; i < 5; ++i) comp(i, 4) = -q.coeff[5 - i] / q.coeff[0];
    Eigen::EigenSolver<Eigen::Matrix<double, 5, 5>> es(comp, /*computeEigenvectors=*/false);

    std::vector<double> roots;
    for (int i = 0; i < 5; ++i) {
        const std::complex<double> lam = es.eigenvalues()[i];
        // A real double root perturbs into a conjugate pair with imaginary
        // part O(sqrt(eps)) ~ 1e-8, so the reality filter must sit well above
        // that; anything admitted here still has to pass the |Q| residual
        // check below, which only a near-tangency (height < 1e-9) can.
        if (std::abs(lam.imag()) > 1e-6) continue;
        double u = lam.real();
        if (!(u > 0.0) || u >= 1.0 + 1e-9) continue;
        // Newton polish; near a double root |Q'| collapses, so fall back to
        // polishing the critical point of Q instead.
        for (int it = 0; it < 10; ++it) {
            const double fu = q.eval(u);
            const double du = q.deriv(u);
            if (std::abs(du) < 1e-9) break;
            const double step = fu / du;
            u -= step;
            if (std::abs(step) < 1e-16) break;
        }
        if (std::abs(q.deriv(u)) < 1e-6) {
            double uc = u;
            for (int it = 0; it < 30; ++it) {
                const double d1 = q.deriv(uc);
                const double d2 = q.deriv2(uc);
                if (std::abs(d2) < 1e-12) break;
                const double step = d1 / d2;
                uc -= step;
                if (std::abs(step) < 1e-16) break;
            }
            if (std::abs(q.eval(uc)) < std::abs(q.eval(u))) u = uc;
        }
        if (std::abs(q.eval(u)) > 1e-9) continue;
        if (!(u > 0.0) || u >= 1.0 - 1e-12) continue;
        roots.push_back(u);
    }
    std::sort(roots.begin(), roots.end());

    // Cluster coincident roots (double roots show up twice from the
    // companion matrix) and keep one representative each.
    std::vector<std::pair<double, bool>> unique_roots;  // (u, degenerate)
    for (double u : roots) {
        if (!unique_roots.empty() && std::abs(u - unique_roots.back().first) < 1e-7) {
            unique_roots.back().first = 0.5 * (unique_roots.back().first + u);
            unique_roots.back().second = true;  // multiplicity seen by the companion matrix
            continue;
        }
        unique_roots.push_back({u, false});
    }
    // |Q'| alone cannot certify a fold at representable parameters (a double
    // root perturbs by sqrt(eps) under coefficient rounding, leaving |Q'| at
    // the split roots near 1e-7), so cluster multiplicity is the primary
    // signal and the derivative test a fallback for lone tangent roots.
    for (auto& [u, degen] : unique_roots)
        degen = degen || std::abs(q.deriv(u)) < 1e-10;

    for (const auto& [u, degen] : unique_roots) {
        const double v = predator_nullcline(p, u);
        if (!(v > 1e-12)) continue;
        Equilibrium eq = classify_state(p, {u, v}, EqKind::interior);
        eq.degenerate = degen;
        set.eqs.push_back(eq);
    }
    return set;
}

}  // namespace eco
