#pragma once

// Deterministic parameter sweeps: a dense cartesian job grid over model
// parameters, executed by a worker pool and merged in job-index order so the
// output bytes never depend on the worker count.

#include "ecopattern/output.hpp"
#include "ecopattern/params.hpp"
#include "ecopattern/scenario.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace eco {

struct SweepAxis {
    std::string name;            // model parameter: one of a,b,c,d,e,f
    std::vector<double> values;  // grid values, in scenario order
};

struct SweepJob {
    std::size_t index = 0;
    std::vector<std::pair<std::string, double>> overrides;  // one per axis
    std::uint64_t seed = 0;
};

struct SweepOutcome {
    std::vector<std::string> outputs;  // files written (relative names)
    std::vector<std::pair<std::size_t, std::string>> failures;  // job index, message
    std::size_t n_jobs = 0;
};

// Axes from the [sweep] section (model-parameter keys, in a..f order) and the
// dense row-major job list (first axis outermost).  Throws ScenarioError when
// no axis is present.
std::vector<SweepAxis> sweep_axes(const Scenario& sc);
std::vector<SweepJob> sweep_jobs(const std::vector<SweepAxis>& axes, std::uint64_t base_seed);

// Runs the [sweep] `task` (a '+'-joined subset of equilibria, turing,
// classify, cycles) over the grid with `workers` threads.  Per-job failures
// are recorded and skipped, never fatal.  Writes one sweep_<subtask>.csv per
// subtask into out_dir.
SweepOutcome run_sweep(const Scenario& sc, const Params& base, const std::string& out_dir,
                       std::uint64_t base_seed, int workers);

}  // namespace eco
