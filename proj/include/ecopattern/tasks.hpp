#pragma once

// Scenario execution: resolves the task, runs it, writes its outputs and the
// manifest, and maps failures onto process exit codes.

#include <cstdint>
#include <string>

namespace eco {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitNumericalError = 3;

struct CliOverrides {
    std::string task;     // positional task name; must agree with the scenario's
    std::string out_dir;  // --out
    std::uint64_t seed = 0;
    bool seed_set = false;  // --seed given
    int workers = 0;        // --workers given when > 0
};

// Parses and runs the scenario.  Returns kExitOk, kExitParseError (nothing
// written), or kExitNumericalError (partial outputs and manifest preserved).
// Diagnostics go to stderr.
int run_scenario(const std::string& scenario_path, const CliOverrides& ov);

// Renders charts/heatmaps for an existing output directory.
int run_render(const std::string& dir);

}  // namespace eco
