// ecopattern: scenario-driven analysis of a prey-predator system with group
// defense and repellent prey-taxis.  Tasks cover temporal equilibria and
// bifurcations, spatial linear analysis, amplitude-equation predictions,
// direct 1-D simulation, parameter sweeps, and chart rendering.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ecopattern/tasks.hpp"

int main(int argc, char** argv) {
    CLI::App app{"prey-predator pattern-formation toolkit"};
    app.name("ecopattern");

    std::string task, scenario, out;
    unsigned long long seed = 0;
    int workers = 0;
    app.add_option("task", task,
                   "one of: equilibria bifurcate codim2 cycles ode transient dispersion "
                   "turing surface pde wna sweep render")
        ->required();
    app.add_option("--scenario", scenario, "scenario file (key = value lines)");
    app.add_option("--out", out, "output directory (overrides the scenario's 'out')");
    auto* seed_opt = app.add_option("--seed", seed, "base random seed (overrides the scenario)");
    app.add_option("--workers", workers, "sweep worker threads (or env ECOPATTERN_WORKERS)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return eco::kExitParseError;
    }

    if (task == "render") {
        if (out.empty()) {
            std::cerr << "ecopattern: render needs --out DIR (a directory with task outputs)\n";
            return eco::kExitParseError;
        }
        return eco::run_render(out);
    }

    if (scenario.empty()) {
        std::cerr << "ecopattern: missing --scenario FILE\n";
        return eco::kExitParseError;
    }
    eco::CliOverrides ov;
    ov.task = task;
    ov.out_dir = out;
    ov.workers = workers;
    if (seed_opt->count() > 0) {
        ov.seed = seed;
        ov.seed_set = true;
    }
    return eco::run_scenario(scenario, ov);
}
