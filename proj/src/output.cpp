#include "ecopattern/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace eco {

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_g6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary), n_cols_(header.size()) {
    if (!out_) throw std::runtime_error("cannot open '" + path + "' for writing");
    row(header);
    rows_ = 0;  // header does not count as a data row
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_)
        throw std::runtime_error("CSV row width " + std::to_string(cells.size()) +
                                 " != header width " + std::to_string(n_cols_) + " in " + path_);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    ++rows_;
    if (!out_) throw std::runtime_error("write failed on " + path_);
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    CsvTable t;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::string cell;
        std::stringstream ss(s);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!s.empty() && s.back() == ',') cells.emplace_back();
        return cells;
    };
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line);
        if (first) {
            t.header = cells;
            first = false;
        } else {
            if (cells.size() != t.header.size())
                throw std::runtime_error("ragged CSV row in " + path);
            t.rows.push_back(std::move(cells));
        }
    }
    if (first) throw std::runtime_error("empty CSV file " + path);
    return t;
}

void write_pgm(const std::string& path, const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty())
        throw std::runtime_error("refusing to write empty image " + path);
    const std::size_t w = rows.front().size(), h = rows.size();
    double lo = rows[0][0], hi = rows[0][0];
    for (const auto& r : rows) {
        if (r.size() != w) throw std::runtime_error("ragged image rows for " + path);
        for (double x : r) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    const double span = hi - lo;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "P2\n" << w << ' ' << h << "\n255\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < w; ++i) {
            int g = span > 0 ? static_cast<int>(std::lround((r[i] - lo) / span * 255.0)) : 0;
            g = std::clamp(g, 0, 255);
            out << g << (i + 1 == w ? '\n' : ' ');
        }
    }
    if (!out) throw std::runtime_error("write failed on " + path);
    std::ofstream side(path + ".txt", std::ios::binary);
    if (!side) throw std::runtime_error("cannot open '" + path + ".txt' for writing");
    side << "min = " << fmt_g17(lo) << "\nmax = " << fmt_g17(hi) << "\nrows = " << h
         << "\ncols = " << w << "\n";
}

void write_manifest(const std::string& dir, const ManifestInfo& info) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["task"] = info.task;
    j["scenario_file"] = info.scenario_file;
    nlohmann::ordered_json sj = nlohmann::ordered_json::object();
    for (const auto& [sec, kv] : info.scenario) {
        nlohmann::ordered_json kj = nlohmann::ordered_json::object();
        for (const auto& [k, v] : kv) kj[k] = v;
        sj[sec.empty() ? "root" : sec] = kj;
    }
    j["scenario"] = sj;
    nlohmann::ordered_json pj = nlohmann::ordered_json::object();
    for (const auto& [k, v] : info.params) pj[k] = v;
    j["params"] = pj;
    j["seed"] = info.seed;
    j["workers"] = info.workers;
    j["outputs"] = info.outputs;
    j["status"] = info.status;
    j["wall_time_seconds"] = info.wall_time_seconds;
    if (!info.failures.empty()) {
        nlohmann::ordered_json fj = nlohmann::ordered_json::array();
        for (const auto& [idx, msg] : info.failures)
            fj.push_back({{"job", idx}, {"message", msg}});
        j["failures"] = fj;
    }
    std::ofstream out(join_path(dir, "manifest.json"), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest in " + dir);
    out << j.dump(2) << '\n';
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec && !std::filesystem::is_directory(dir))
        throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty()) return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

}  // namespace eco
