#include "ecopattern/sweep.hpp"

#include <atomic>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ecopattern/attractor.hpp"
#include "ecopattern/bifurcation.hpp"
#include "ecopattern/equilibria.hpp"
#include "ecopattern/rng.hpp"
#include "ecopattern/spatial.hpp"

namespace eco {

namespace {

// keys of the [sweep] section that define grid axes
const char* kAxisNames[] = {"a", "b", "c", "d", "e", "f"};

std::vector<std::string> split_subtasks(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, '+'))
        if (!piece.empty()) out.push_back(piece);
    if (out.empty()) throw ScenarioError("sweep: empty task list");
    return out;
}

using Rows = std::vector<std::vector<std::string>>;

struct JobOutcome {
    bool ok = true;
    std::string error;
    std::map<std::string, Rows> rows;  // subtask -> data rows (already prefixed)
};

Rows rows_equilibria(const Params& p) {
    Rows rows;
    for (const auto& eq : find_equilibria(p).eqs)
        rows.push_back({to_string(eq.kind), fmt_g17(eq.u), fmt_g17(eq.v),
                        fmt_g17(eq.lam1.real()), fmt_g17(eq.lam1.imag()),
                        fmt_g17(eq.lam2.real()), fmt_g17(eq.lam2.imag()),
                        to_string(eq.stability)});
    return rows;
}

Rows rows_turing(const Params& p) {
    const auto inter = find_equilibria(p).interior();
    std::string ct, kt, region;
    if (!inter.empty()) {
        try {
            const TuringPoint tp = turing_threshold(p, State{inter.front().u, inter.front().v});
            ct = fmt_g17(tp.c_T);
            kt = fmt_g17(tp.k_T);
            region = to_string(tp.region);
        } catch (const std::domain_error&) {
        }
    }
    return {{ct, kt, region}};
}

Rows rows_classify(const Params& p, const State& ic, double t_max) {
    const AttractorLabel lab = classify_attractor(p, ic, t_max);
    return {{lab.name(), fmt_g17(lab.terminal.u), fmt_g17(lab.terminal.v),
             lab.kind == AttractorKind::limit_cycle ? fmt_g17(lab.period) : ""}};
}

Rows rows_cycles(const Params& p, const State& ic, double t_max) {
    const AttractorLabel lab = classify_attractor(p, ic, t_max);
    if (lab.kind != AttractorKind::limit_cycle) return {{"", "", "", "none"}};
    // polish the observed orbit so the period and Floquet multiplier are
    // Newton-accurate rather than sampling-accurate
    if (const auto orb = shoot_orbit(p, lab.terminal.v, lab.period))
        return {{fmt_g17(orb->period), fmt_g17(orb->u_section), fmt_g17(orb->multiplier),
                 orb->stable ? "stable" : "unstable"}};
    return {{fmt_g17(lab.period), fmt_g17(lab.terminal.u), "", "stable"}};
}

}  // namespace

std::vector<SweepAxis> sweep_axes(const Scenario& sc) {
    std::vector<SweepAxis> axes;
    for (const char* name : kAxisNames)
        if (sc.has("sweep", name)) axes.push_back({name, sc.get_values("sweep", name)});
    if (axes.empty())
        throw ScenarioError("sweep: no parameter axis given (set one of a..f in [sweep])");
    return axes;
}

std::vector<SweepJob> sweep_jobs(const std::vector<SweepAxis>& axes, std::uint64_t base_seed) {
    std::size_t total = 1;
    for (const auto& ax : axes) total *= ax.values.size();
    std::vector<SweepJob> jobs(total);
    for (std::size_t i = 0; i < total; ++i) {
        SweepJob& job = jobs[i];
        job.index = i;
        job.seed = derive_seed(base_seed, i);
        // row-major decomposition, first axis outermost
        std::size_t rem = i;
        std::size_t block = total;
        for (const auto& ax : axes) {
            block /= ax.values.size();
            job.overrides.emplace_back(ax.name, ax.values[rem / block]);
            rem %= block;
        }
    }
    return jobs;
}

SweepOutcome run_sweep(const Scenario& sc, const Params& base, const std::string& out_dir,
                       std::uint64_t base_seed, int workers) {
    const std::vector<std::string> subtasks = split_subtasks(sc.require_str("sweep", "task"));
    const std::vector<SweepAxis> axes = sweep_axes(sc);
    const std::vector<SweepJob> jobs = sweep_jobs(axes, base_seed);

    const bool needs_ic = [&] {
        for (const auto& t : subtasks)
            if (t == "classify" || t == "cycles") return true;
        return false;
    }();
    State ic{};
    if (needs_ic) ic = {sc.require_num("sweep", "u0"), sc.require_num("sweep", "v0")};
    const double t_max = sc.get_num("sweep", "t_max", 1e5);
    for (const auto& t : subtasks)
        if (t != "equilibria" && t != "turing" && t != "classify" && t != "cycles")
            throw ScenarioError("sweep: unknown subtask '" + t +
                                "' (expected equilibria, turing, classify, or cycles)");

    std::vector<JobOutcome> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            JobOutcome& out = results[i];
            Params p = base;
            std::vector<std::string> prefix{std::to_string(jobs[i].index)};
            for (const auto& [name, value] : jobs[i].overrides) {
                prefix.push_back(fmt_g17(value));
                switch (name[0]) {
                    case 'a': p.a = value; break;
                    case 'b': p.b = value; break;
                    case 'c': p.c = value; break;
                    case 'd': p.d = value; break;
                    case 'e': p.e = value; break;
                    case 'f': p.f = value; break;
                }
            }
            try {
                p.require_valid();
                for (const auto& t : subtasks) {
                    Rows rows;
                    if (t == "equilibria")
                        rows = rows_equilibria(p);
                    else if (t == "turing")
                        rows = rows_turing(p);
                    else if (t == "classify")
                        rows = rows_classify(p, ic, t_max);
                    else
                        rows = rows_cycles(p, ic, t_max);
                    for (auto& r : rows) r.insert(r.begin(), prefix.begin(), prefix.end());
                    out.rows[t] = std::move(rows);
                }
            } catch (const std::exception& ex) {
                out.ok = false;
                out.error = ex.what();
                out.rows.clear();
            }
        }
    };
    const int nthreads = static_cast<int>(
        std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(jobs.size(), 1)));
    std::vector<std::thread> pool;
    for (int t = 0; t + 1 < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // merge in job-index order so the bytes are independent of the pool size
    SweepOutcome oc;
    oc.n_jobs = jobs.size();
    std::vector<std::string> prefix_header{"job"};
    for (const auto& ax : axes) prefix_header.push_back(ax.name);
    const std::map<std::string, std::vector<std::string>> schema = {
        {"equilibria", {"kind", "u", "v", "re1", "im1", "re2", "im2", "label"}},
        {"turing", {"c_T", "k_T", "region"}},
        {"classify", {"label", "u", "v", "period"}},
        {"cycles", {"period", "u_section", "multiplier", "stability"}},
    };
    for (const auto& t : subtasks) {
        std::vector<std::string> header = prefix_header;
        const auto& cols = schema.at(t);
        header.insert(header.end(), cols.begin(), cols.end());
        const std::string name = "sweep_" + t + ".csv";
        CsvWriter csv(join_path(out_dir, name), header);
        for (const auto& res : results)
            if (res.ok && res.rows.count(t))
                for (const auto& r : res.rows.at(t)) csv.row(r);
        oc.outputs.push_back(name);
    }
    for (std::size_t i = 0; i < results.size(); ++i)
        if (!results[i].ok) oc.failures.emplace_back(i, results[i].error);
    return oc;
}

}  // namespace eco
