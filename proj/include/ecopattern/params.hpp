#ifndef ECOPATTERN_PARAMS_HPP
#define ECOPATTERN_PARAMS_HPP

#include <cmath>
#include <stdexcept>

namespace eco {

// Dimensionless parameter set of the taxis-reaction-diffusion model
//   u_t = u_xx + u(1-u) - a*u*v/(1+b*u^2)
//   v_t = d*v_xx + c*(v*u_x)_x + e*a*u*v/(1+b*u^2) - f*v - v^2
// All parameters are strictly positive except the taxis strength c >= 0.
struct Params {
    double a = 1.0;  // predation scale
    double b = 1.0;  // group-defense strength
    double c = 0.0;  // prey-taxis coefficient (repellent for c>0)
    double d = 1.0;  // predator/prey diffusivity ratio
    double e = 1.0;  // conversion efficiency
    double f = 1.0;  // predator death rate

    bool valid() const {
        return std::isfinite(a) && a > 0 && std::isfinite(b) && b > 0 &&
               std::isfinite(c) && c >= 0 && std::isfinite(d) && d > 0 &&
               std::isfinite(e) && e > 0 && std::isfinite(f) && f > 0;
    }
    void require_valid() const {
        if (!valid()) throw std::domain_error("invalid model parameters");
    }
};

// Dimensional rates of the underlying population model; only used as input
// to nondimensionalize().
struct DimensionalParams {
    double alpha = 1.0;  // predation rate
    double beta = 1.0;   // group-defense saturation
    double gamma = 1.0;  // predator mortality
    double delta = 1.0;  // predator self-limitation
    double zeta = 1.0;   // conversion efficiency
    double sigma = 1.0;  // prey growth rate
    double eta = 1.0;    // prey self-limitation
    double chi = 0.0;    // taxis coefficient
    double D1 = 1.0;     // prey diffusivity
    double D2 = 1.0;     // predator diffusivity
};

// Parameter map induced by u = (eta/sigma) N, v = (delta/sigma) P,
// t = sigma T, x = sqrt(sigma/D1) X.
inline Params nondimensionalize(const DimensionalParams& dp) {
    if (!(dp.delta > 0) || !(dp.eta > 0) || !(dp.sigma > 0) || !(dp.D1 > 0))
        throw std::domain_error("nondimensionalize: zero or negative scale parameter");
    Params p;
    p.a = dp.alpha / dp.delta;
    p.b = dp.beta * dp.sigma * dp.sigma / (dp.eta * dp.eta);
    p.c = dp.chi * dp.sigma / (dp.D1 * dp.eta);
    p.d = dp.D2 / dp.D1;
    p.e = dp.zeta * dp.delta / dp.eta;
    p.f = dp.gamma / dp.sigma;
    p.require_valid();
    return p;
}

// A point in (prey, predator) phase space.
struct State {
    double u = 0.0;
    double v = 0.0;
};

// Small 2-vector used throughout the analysis code.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
};
inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

}  // namespace eco

#endif
