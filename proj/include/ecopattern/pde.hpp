#pragma once

// 1-D finite-volume simulation of the full taxis-reaction-diffusion system
// with no-flux boundaries, plus field statistics used to characterize the
// resulting patterns.

#include "ecopattern/ode.hpp"
#include "ecopattern/params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eco {

struct GridSpec {
    double L = 200.0;
    int N = 1024;
    double h() const { return L / N; }
    double center(int i) const { return (i + 0.5) * h(); }
};

struct Field1D {
    double t = 0;
    std::vector<double> u, v;  // cell averages, length N
};

// Lemma-style running bounds: K1=sum(u)h, K2=sum(v)h must stay below A and B;
// cell values must respect the maximum principle ceiling C for u and
// non-negativity for both species.
struct BoundsReport {
    double K1 = 0, K2 = 0;      // at the last checked frame
    double A = 0, B = 0, C = 0; // bound constants fixed by the initial data
    double max_K1 = 0, max_K2 = 0, max_u = 0, min_u = 0, min_v = 0;  // extremes over the run
    bool ok = true;
    std::string violation;
};

struct PdeOptions {
    double t_end = 1000.0;
    double rel_tol = 1e-6;
    double frame_interval = 10.0;  // output/bounds-check cadence
    bool upwind_taxis = false;     // default: arithmetic-mean face value for v
    bool reactions_enabled = true; // disabled only by the conservation property test
    bool stop_when_steady = true;  // halt when ||du/dt||_inf < 1e-8 sustained over 50 time units
};

struct PdeResult {
    std::vector<Field1D> frames;  // includes t=0 and the final state
    BoundsReport bounds;
    bool steady = false;
    double t_final = 0;
    bool aborted = false;         // invariant violation -> aborted with the offending frame kept
    std::string abort_reason;
    OdeStatus status = OdeStatus::done;
    std::size_t n_steps = 0;
};

PdeResult simulate_pde(const Params& p, const GridSpec& g, const Field1D& ic,
                       const PdeOptions& opts = {});

// Initial-condition helpers -------------------------------------------------

// homogeneous base state plus Gaussian noise of the given amplitude in every cell
Field1D noisy_homogeneous_ic(const GridSpec& g, const State& base, double amp,
                             std::uint64_t seed);

// base state everywhere, noise only inside the window [x_lo, x_hi]
Field1D windowed_noise_ic(const GridSpec& g, const State& base, double amp, double x_lo,
                          double x_hi, std::uint64_t seed);

// base state plus amp*cos(wavenumber x) on u and amp_v*cos(wavenumber x) on v
Field1D single_mode_ic(const GridSpec& g, const State& base, double wavenumber, double amp_u,
                       double amp_v);

// Field statistics -----------------------------------------------------------

struct FieldStats {
    double mean_u = 0, mean_v = 0;           // spatial averages of the final frame
    double peak_to_peak_u = 0, peak_to_peak_v = 0;
    double spatial_std_u = 0;                // final frame
    double temporal_std_mean_u = 0;          // std of <u> over frames with t > t_cutoff
    int dominant_mode = 0;                   // cosine mode index m of u - <u>
    double dominant_wavenumber = 0;          // m*pi/L
    double dominant_amplitude = 0;
};

// amplitude of cosine mode m in a cell-centered field (DCT-II projection)
double mode_amplitude(const std::vector<double>& cells, int m);

double spatial_mean(const std::vector<double>& cells, const GridSpec& g);

FieldStats field_statistics(const std::vector<Field1D>& frames, const GridSpec& g,
                            double t_cutoff = 0);

}  // namespace eco
