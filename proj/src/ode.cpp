#include "ecopattern/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eco {

namespace {

// Dormand-Prince 5(4) tableau ("DOPRI5"), FSAL: k7 of an accepted step is k1
// of the next.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// embedded 4th-order weights
constexpr double e1 = 5179.0 / 57600.0, e3 = 7571.0 / 16695.0, e4 = 393.0 / 640.0,
                 e5 = -92097.0 / 339200.0, e6 = 187.0 / 2100.0, e7 = 1.0 / 40.0;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct Work {
    std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, y1, err;
    void resize(std::size_t n) {
        for (auto* v : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &ytmp, &y1, &err}) v->resize(n);
    }
};

// One DP45 trial step from (t, y) with k1 already holding f(t, y).
// Fills w.y1 (5th-order solution), w.k7 = f(t+h, y1), and w.err.
void dp45_step(const OdeRhs& rhs, double t, const std::vector<double>& y, double h, Work& w) {
    const std::size_t n = y.size();
    auto& [k1, k2, k3, k4, k5, k6, k7, ytmp, y1, err] = w;
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + h / 5.0, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + 3.0 * h / 10.0, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + 4.0 * h / 5.0, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + 8.0 * h / 9.0, ytmp, k5);
    for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i)
        y1[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, y1, k7);
    for (std::size_t i = 0; i < n; ++i) {
        const double y4 = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                      e6 * k6[i] + e7 * k7[i]);
        err[i] = y1[i] - y4;
    }
}

void fill_dense(const std::vector<double>& y0, const std::vector<double>& y1, double t, double h,
                const Work& w, DenseSegment& seg) {
    const std::size_t n = y0.size();
    seg.t0 = t;
    seg.h = h;
    seg.rcont1.resize(n);
    seg.rcont2.resize(n);
    seg.rcont3.resize(n);
    seg.rcont4.resize(n);
    seg.rcont5.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dy = y1[i] - y0[i];
        seg.rcont1[i] = y0[i];
        seg.rcont2[i] = dy;
        seg.rcont3[i] = h * w.k1[i] - dy;
        seg.rcont4[i] = dy - h * w.k7[i] - seg.rcont3[i];
        seg.rcont5[i] = h * (d1 * w.k1[i] + d3 * w.k3[i] + d4 * w.k4[i] + d5 * w.k5[i] +
                             d6 * w.k6[i] + d7 * w.k7[i]);
    }
}

}  // namespace

void DenseSegment::eval(double t, std::vector<double>& y) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    y.resize(rcont1.size());
    for (std::size_t i = 0; i < rcont1.size(); ++i)
        y[i] = rcont1[i] +
               s * (rcont2[i] + s1 * (rcont3[i] + s * (rcont4[i] + s1 * rcont5[i])));
}

double DenseSegment::eval_component(double t, std::size_t i) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    return rcont1[i] + s * (rcont2[i] + s1 * (rcont3[i] + s * (rcont4[i] + s1 * rcont5[i])));
}

OdeResult integrate(const OdeRhs& rhs, std::vector<double> y0, double t0, double t_end,
                    const OdeOptions& opts, const OdeObserver& observer) {
    OdeResult res;
    res.y = std::move(y0);
    res.t = t0;
    const std::size_t n = res.y.size();
    if (n == 0) throw std::invalid_argument("integrate: empty state");
    const double dir = (t_end >= t0) ? 1.0 : -1.0;
    if (t_end == t0) return res;

    Work w;
    w.resize(n);
    DenseSegment seg;
    rhs(res.t, res.y, w.k1);

    double h = std::min(std::abs(opts.initial_step), opts.max_step) * dir;
    while (true) {
        if (res.n_steps + res.n_rejected >= opts.max_steps) {
            res.status = OdeStatus::too_many_steps;
            return res;
        }
        if ((res.t + h - t_end) * dir > 0.0) h = t_end - res.t;
        dp45_step(rhs, res.t, res.y, h, w);

        double err_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc =
                opts.abs_tol + opts.rel_tol * std::max(std::abs(res.y[i]), std::abs(w.y1[i]));
            const double q = w.err[i] / sc;
            err_sq += q * q;
        }
        const double err = std::sqrt(err_sq / double(n));

        bool accept = err <= 1.0;
        if (accept && opts.enforce_nonnegative) {
            for (std::size_t i = 0; i < n; ++i)
                if (w.y1[i] < -1e-12) { accept = false; break; }
        }

        if (accept) {
            bool clamped = false;
            if (opts.enforce_nonnegative) {
                for (std::size_t i = 0; i < n; ++i)
                    if (w.y1[i] < 0.0) { w.y1[i] = 0.0; clamped = true; }
            }
            fill_dense(res.y, w.y1, res.t, h, w, seg);
            res.t += h;
            res.y = w.y1;
            ++res.n_steps;
            if (clamped)
                rhs(res.t, res.y, w.k7);  // k1 of next step must match clamped state
            std::swap(w.k1, w.k7);        // FSAL
            if (observer && !observer(seg, res.y, res.t)) {
                res.status = OdeStatus::halted;
                return res;
            }
            if (std::abs(res.t - t_end) < 1e-300 || (res.t - t_end) * dir >= 0.0) {
                res.status = OdeStatus::done;
                return res;
            }
            double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
            fac = std::clamp(fac, 0.2, 5.0);
            h *= fac;
            if (std::abs(h) > opts.max_step) h = opts.max_step * dir;
        } else {
            ++res.n_rejected;
            if (err <= 1.0) {
                h *= 0.5;  // rejected by the non-negativity guard
            } else {
                double fac = 0.9 * std::pow(err, -0.2);
                fac = std::max(fac, 0.1);
                h *= fac;
            }
            if (std::abs(h) < opts.min_step) {
                res.status = OdeStatus::step_underflow;
                return res;
            }
        }
    }
}

OdeResult integrate_fixed(const OdeRhs& rhs, std::vector<double> y0, double t0, double t_end,
                          double dt) {
    OdeResult res;
    res.y = std::move(y0);
    res.t = t0;
    const std::size_t n = res.y.size();
    Work w;
    w.resize(n);
    DenseSegment seg;
    rhs(res.t, res.y, w.k1);
    const double dir = (t_end >= t0) ? 1.0 : -1.0;
    double h = std::abs(dt) * dir;
    while ((res.t - t_end) * dir < 0.0) {
        if ((res.t + h - t_end) * dir > 0.0) h = t_end - res.t;
        dp45_step(rhs, res.t, res.y, h, w);
        fill_dense(res.y, w.y1, res.t, h, w, seg);
        res.t += h;
        res.y = w.y1;
        ++res.n_steps;
        std::swap(w.k1, w.k7);
    }
    return res;
}

}  // namespace eco
