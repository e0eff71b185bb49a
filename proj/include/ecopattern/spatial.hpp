#pragma once

// Linear spatial analysis of the taxis-reaction-diffusion system about an
// interior homogeneous state: dispersion relation, critical taxis threshold,
// and parameter-region classification.
//
// Convention: k below is the LAPLACIAN EIGENVALUE (so the growth factors are
// exp(lambda t) cos(sqrt(k) x)); reported wavenumbers are sqrt(k).

#include "ecopattern/kinetics.hpp"
#include "ecopattern/params.hpp"

#include <vector>

namespace eco {

struct DispersionResult {
    std::vector<double> k;          // sampled Laplacian eigenvalues
    std::vector<double> T;          // trace of the mode matrix
    std::vector<double> H;          // determinant of the mode matrix
    std::vector<double> re_lambda;  // largest real part of the mode eigenvalues
    double k_min = 0;               // argmin of H (formula value, may be negative)
    double H_min = 0;               // min of H over k >= 0
};

// T(k) = a10 + b01 - (1+d)k ; H(k) = d k^2 - (a10 d + b01 - c v* a01) k + det J.
double dispersion_T(const Params& p, const Jacobian2& j, double k);
double dispersion_H(const Params& p, const Jacobian2& j, double v_star, double k);
double dispersion_re_lambda(const Params& p, const Jacobian2& j, double v_star, double k);

DispersionResult dispersion(const Params& p, const State& eq, const std::vector<double>& k_grid);

enum class SpatialRegion { stable, turing, hopf, turing_hopf };
const char* to_string(SpatialRegion r);

struct TuringPoint {
    double c_T = 0;  // critical taxis coefficient
    double k_T = 0;  // critical wavenumber = sqrt of the critical Laplacian eigenvalue
    SpatialRegion region = SpatialRegion::stable;  // region of the params as given (their own c)
};

// c_T = (a10 d + b01 - 2 sqrt(d det J)) / (a01 v*); at c=c_T the minimum of H
// over k is exactly zero and sits at the Laplacian eigenvalue k_T^2.
// Throws std::domain_error when det J <= 0.
TuringPoint turing_threshold(const Params& p, const State& eq);

// Region from the signs of T(0) (temporal/Hopf side) and min_{k>=0} H(k)
// (Turing side), evaluated with the taxis coefficient in p.
SpatialRegion classify_region(const Params& p, const State& eq);

}  // namespace eco
