#include "ecopattern/spatial.hpp"

#include <cmath>
#include <stdexcept>

namespace eco {

const char* to_string(SpatialRegion r) {
    switch (r) {
        case SpatialRegion::stable: return "stable";
        case SpatialRegion::turing: return "Turing";
        case SpatialRegion::hopf: return "Hopf";
        case SpatialRegion::turing_hopf: return "Turing-Hopf";
    }
    return "?";
}

double dispersion_T(const Params& p, const Jacobian2& j, double k) {
    return j.trace() - (1.0 + p.d) * k;
}

double dispersion_H(const Params& p, const Jacobian2& j, double v_star, double k) {
    const double S = j.a10 * p.d + j.b01 - p.c * v_star * j.a01;
    return p.d * k * k - S * k + j.det();
}

double dispersion_re_lambda(const Params& p, const Jacobian2& j, double v_star, double k) {
    const double T = dispersion_T(p, j, k);
    const double H = dispersion_H(p, j, v_star, k);
    const double disc = T * T - 4.0 * H;
    if (disc >= 0) return (T + std::sqrt(disc)) / 2.0;
    return T / 2.0;
}

DispersionResult dispersion(const Params& p, const State& eq, const std::vector<double>& k_grid) {
    p.require_valid();
    const Jacobian2 j = jacobian(p, eq);
    DispersionResult out;
    out.k = k_grid;
    out.T.reserve(k_grid.size());
    out.H.reserve(k_grid.size());
    out.re_lambda.reserve(k_grid.size());
    for (double k : k_grid) {
        out.T.push_back(dispersion_T(p, j, k));
        out.H.push_back(dispersion_H(p, j, eq.v, k));
        out.re_lambda.push_back(dispersion_re_lambda(p, j, eq.v, k));
    }
    const double S = j.a10 * p.d + j.b01 - p.c * eq.v * j.a01;
    out.k_min = S / (2.0 * p.d);
    out.H_min = dispersion_H(p, j, eq.v, std::max(out.k_min, 0.0));
    return out;
}

SpatialRegion classify_region(const Params& p, const State& eq) {
    p.require_valid();
    const Jacobian2 j = jacobian(p, eq);
    const double S = j.a10 * p.d + j.b01 - p.c * eq.v * j.a01;
    const double k_min = S / (2.0 * p.d);
    const double H_min = dispersion_H(p, j, eq.v, std::max(k_min, 0.0));
    const bool hopf_side = j.trace() > 0;
    const bool turing_side = H_min < 0;
    if (hopf_side && turing_side) return SpatialRegion::turing_hopf;
    if (hopf_side) return SpatialRegion::hopf;
    if (turing_side) return SpatialRegion::turing;
    return SpatialRegion::stable;
}

TuringPoint turing_threshold(const Params& p, const State& eq) {
    p.require_valid();
    const Jacobian2 j = jacobian(p, eq);
    const double det = j.det();
    if (det <= 0)
        throw std::domain_error("turing_threshold: det J <= 0, no diffusion-stable reference");
    TuringPoint tp;
    // Minimum of H touches zero when S = 2 sqrt(d det J); solving for c:
    tp.c_T = (j.a10 * p.d + j.b01 - 2.0 * std::sqrt(p.d * det)) / (j.a01 * eq.v);
    // at that point the minimizing Laplacian eigenvalue is sqrt(det/d)
    tp.k_T = std::pow(det / p.d, 0.25);
    tp.region = classify_region(p, eq);
    return tp;
}

}  // namespace eco
