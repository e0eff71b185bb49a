#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ecopattern/output.hpp"

#include "json.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace eco;
namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* b = std::getenv("ECOPATTERN_BIN");
    REQUIRE_MESSAGE(b != nullptr, "ECOPATTERN_BIN must point at the CLI binary");
    return b;
}

// Runs the CLI via the shell and returns its exit status.  `env_prefix` lets a
// case set ECOPATTERN_WORKERS and similar without touching this process.
int run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + bin() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

struct TempDir {
    std::string path;
    TempDir() {
        path =
            (fs::temp_directory_path() / ("eco_cli_test_" + std::to_string(::getpid()))).string();
        fs::remove_all(path);
        ensure_directory(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return join_path(path, name); }
    std::string write(const std::string& name, const std::string& text) const {
        const std::string p = file(name);
        std::ofstream out(p, std::ios::binary);
        out << text;
        return p;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), "missing file: " << path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json manifest(const std::string& dir) {
    return nlohmann::json::parse(slurp(join_path(dir, "manifest.json")));
}

const char* kBaseParams = "a = 7\nb = 5.65\nc = 0\nd = 80\ne = 0.95\nf = 0.98\n";

}  // namespace

TEST_CASE("turing task reports the threshold and writes a manifest") {
    TempDir td;
    const std::string scen = td.write("s.txt", kBaseParams);
    const std::string out = td.file("out");
    REQUIRE(run_cli("turing --scenario " + scen + " --out " + out) == 0);

    const CsvTable t = read_csv(join_path(out, "turing.csv"));
    REQUIRE(t.rows.size() == 1);
    const int ct = t.column("c_T"), kt = t.column("k_T"), rg = t.column("region");
    REQUIRE(ct >= 0);
    REQUIRE(kt >= 0);
    CHECK(std::strtod(t.rows[0][ct].c_str(), nullptr) ==
          doctest::Approx(26.889080870964744).epsilon(1e-6));
    CHECK(std::strtod(t.rows[0][kt].c_str(), nullptr) ==
          doctest::Approx(0.28312808215526142).epsilon(1e-6));
    CHECK(!t.rows[0][rg].empty());

    const auto j = manifest(out);
    CHECK(j.at("status") == "ok");
    CHECK(j.at("task") == "turing");
    CHECK(j.at("params").at("f") == 0.98);
    CHECK(j.at("seed") == 1);  // default base seed
    const auto& outputs = j.at("outputs");
    CHECK(std::find(outputs.begin(), outputs.end(), "turing.csv") != outputs.end());
}

TEST_CASE("equilibria task runs even when coexistence is impossible") {
    TempDir td;
    const std::string scen = td.write("s.txt", "a=7\nb=5.65\ne=0.95\nf=2.5\n");
    const std::string out = td.file("out");
    REQUIRE(run_cli("equilibria --scenario " + scen + " --out " + out) == 0);
    const CsvTable t = read_csv(join_path(out, "equilibria.csv"));
    REQUIRE(t.rows.size() == 2);  // extinction and prey-only states survive
    const int uc = t.column("u");
    REQUIRE(uc >= 0);
    CHECK(std::strtod(t.rows[0][uc].c_str(), nullptr) == 0.0);
    CHECK(std::strtod(t.rows[1][uc].c_str(), nullptr) == 1.0);
}

TEST_CASE("configuration errors exit 2 and write nothing") {
    TempDir td;
    const std::string out = td.file("never");

    SUBCASE("missing model parameter") {
        const std::string scen = td.write("s.txt", "a = 7\ne = 0.95\nf = 0.98\n");
        CHECK(run_cli("equilibria --scenario " + scen + " --out " + out) == 2);
        CHECK(!fs::exists(out));
    }
    SUBCASE("task conflicting with the scenario") {
        const std::string scen = td.write("s.txt", std::string(kBaseParams) + "task = turing\n");
        CHECK(run_cli("equilibria --scenario " + scen + " --out " + out) == 2);
        CHECK(!fs::exists(out));
    }
    SUBCASE("unknown task name") {
        const std::string scen = td.write("s.txt", kBaseParams);
        CHECK(run_cli("frobnicate --scenario " + scen + " --out " + out) == 2);
        CHECK(!fs::exists(out));
    }
    SUBCASE("missing scenario file argument") {
        CHECK(run_cli("turing --out " + out) == 2);
        CHECK(!fs::exists(out));
    }
    SUBCASE("unreadable scenario file") {
        CHECK(run_cli("turing --scenario " + td.file("nope.txt") + " --out " + out) == 2);
        CHECK(!fs::exists(out));
    }
}

TEST_CASE("numerical failure exits 3 and preserves the manifest") {
    TempDir td;
    // f=1.5 leaves the feasibility window empty: no coexistence state, so the
    // threshold computation must fail after the output directory exists
    const std::string scen = td.write("s.txt", "a=7\nb=5.65\nc=0\nd=80\ne=0.95\nf=1.5\n");
    const std::string out = td.file("out");
    CHECK(run_cli("turing --scenario " + scen + " --out " + out) == 3);
    const auto j = manifest(out);
    const std::string status = j.at("status");
    CHECK(status.rfind("error:", 0) == 0);
    CHECK(j.at("task") == "turing");
}

TEST_CASE("ode task output renders to a chart") {
    TempDir td;
    const std::string scen = td.write("s.txt",
                                      "a=7\nb=7\nc=0\nd=1\ne=0.95\nf=0.873\n"
                                      "[ode]\nu0 = 0.3\nv0 = 0.1\nt_end = 50\n");
    const std::string out = td.file("out");
    REQUIRE(run_cli("ode --scenario " + scen + " --out " + out) == 0);
    const CsvTable t = read_csv(join_path(out, "trajectory.csv"));
    CHECK(t.rows.size() == 501);  // dt_out = 0.1 including both endpoints

    REQUIRE(run_cli("render --out " + out) == 0);
    bool have_svg = false;
    for (const auto& entry : fs::directory_iterator(out))
        if (entry.path().extension() == ".svg") {
            have_svg = true;
            const std::string svg = slurp(entry.path().string());
            CHECK(svg.find("<svg") != std::string::npos);
        }
    CHECK(have_svg);
}

TEST_CASE("render refuses a directory with nothing renderable") {
    TempDir td;
    const std::string empty = td.file("empty");
    ensure_directory(empty);
    CHECK(run_cli("render --out " + empty) == 2);
    CHECK(run_cli("render") == 2);  // --out is required for render
}

TEST_CASE("sweep bytes are identical across worker counts") {
    TempDir td;
    const std::string scen = td.write("s.txt",
                                      std::string(kBaseParams) +
                                          "[sweep]\ntask = equilibria+turing\n"
                                          "b = 5.65,7\nf = 0.9,0.95\n");
    std::vector<std::string> dirs;
    for (int workers : {1, 4}) {
        const std::string out = td.file("w" + std::to_string(workers));
        dirs.push_back(out);
        REQUIRE(run_cli("sweep --scenario " + scen + " --out " + out + " --workers " +
                        std::to_string(workers)) == 0);
    }
    for (const char* name : {"sweep_equilibria.csv", "sweep_turing.csv"})
        CHECK(slurp(join_path(dirs[0], name)) == slurp(join_path(dirs[1], name)));
    CHECK(manifest(dirs[0]).at("workers") == 1);
    CHECK(manifest(dirs[1]).at("workers") == 4);
}

TEST_CASE("worker-count resolution prefers the flag over the environment") {
    TempDir td;
    const std::string scen = td.write("s.txt",
                                      std::string(kBaseParams) +
                                          "[sweep]\ntask = equilibria\nf = 0.9,0.95\n");
    const std::string out1 = td.file("o1"), out2 = td.file("o2");
    REQUIRE(run_cli("sweep --scenario " + scen + " --out " + out1 + " --workers 2",
                    "ECOPATTERN_WORKERS=7 ") == 0);
    CHECK(manifest(out1).at("workers") == 2);
    REQUIRE(run_cli("sweep --scenario " + scen + " --out " + out2,
                    "ECOPATTERN_WORKERS=5 ") == 0);
    CHECK(manifest(out2).at("workers") == 5);
}

TEST_CASE("pde noise realizations follow the seed") {
    TempDir td;
    const std::string scen = td.write("s.txt",
                                      "a=7\nb=5.65\nc=35\nd=80\ne=0.95\nf=0.98\nseed = 3\n"
                                      "[pde]\nN = 32\nL = 50\nt_end = 5\nframe_interval = 1\n"
                                      "ic = noise\namp = 0.01\n");
    auto run_into = [&](const std::string& name, const std::string& extra) {
        const std::string out = td.file(name);
        REQUIRE(run_cli("pde --scenario " + scen + " --out " + out + extra) == 0);
        return out;
    };
    const std::string a = run_into("a", " --seed 7");
    const std::string b = run_into("b", " --seed 7");
    const std::string c = run_into("c", " --seed 8");
    const std::string d = run_into("d", "");  // falls back to the scenario's seed

    CHECK(slurp(join_path(a, "frames.csv")) == slurp(join_path(b, "frames.csv")));
    CHECK(slurp(join_path(a, "frames.csv")) != slurp(join_path(c, "frames.csv")));
    CHECK(manifest(a).at("seed") == 7);
    CHECK(manifest(c).at("seed") == 8);
    CHECK(manifest(d).at("seed") == 3);
    CHECK(fs::exists(join_path(a, "stats.csv")));
    CHECK(fs::exists(join_path(a, "u.pgm")));
    CHECK(fs::exists(join_path(a, "u.pgm.txt")));
}

TEST_CASE("scenario out key is honored when no flag is given") {
    TempDir td;
    const std::string out = td.file("from_scenario");
    const std::string scen =
        td.write("s.txt", std::string(kBaseParams) + "out = " + out + "\n");
    REQUIRE(run_cli("turing --scenario " + scen) == 0);
    CHECK(fs::exists(join_path(out, "turing.csv")));
    CHECK(fs::exists(join_path(out, "manifest.json")));
}
