#include "ecopattern/scenario.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace eco {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

double parse_number(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ScenarioError("empty value where a number was expected");
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE)
        throw ScenarioError("malformed number '" + t + "'");
    return x;
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        piece = trim(piece);
        if (piece.empty()) throw ScenarioError("empty element in value list '" + text + "'");
        const std::size_t c1 = piece.find(':');
        if (c1 == std::string::npos) {
            out.push_back(parse_number(piece));
            continue;
        }
        const std::size_t c2 = piece.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw ScenarioError("range must be lo:hi:count, got '" + piece + "'");
        const double lo = parse_number(piece.substr(0, c1));
        const double hi = parse_number(piece.substr(c1 + 1, c2 - c1 - 1));
        const double cnt_raw = parse_number(piece.substr(c2 + 1));
        const int cnt = static_cast<int>(cnt_raw);
        if (cnt_raw != cnt || cnt < 1)
            throw ScenarioError("range count must be a positive integer in '" + piece + "'");
        if (cnt == 1) {
            out.push_back(lo);
        } else {
            const double step = (hi - lo) / (cnt - 1);
            for (int i = 0; i < cnt; ++i)
                out.push_back(i == cnt - 1 ? hi : lo + step * i);
        }
    }
    if (out.empty()) throw ScenarioError("empty value list");
    return out;
}

bool Scenario::has(const std::string& section, const std::string& key) const {
    auto s = sections.find(section);
    return s != sections.end() && s->second.count(key) > 0;
}

std::string Scenario::get_str(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
    auto s = sections.find(section);
    if (s == sections.end()) return fallback;
    auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
}

std::string Scenario::require_str(const std::string& section, const std::string& key) const {
    if (!has(section, key))
        throw ScenarioError("missing required key '" + key + "'" +
                            (section.empty() ? "" : " in section [" + section + "]"));
    return sections.at(section).at(key);
}

double Scenario::get_num(const std::string& section, const std::string& key,
                         double fallback) const {
    return has(section, key) ? parse_number(sections.at(section).at(key)) : fallback;
}

double Scenario::require_num(const std::string& section, const std::string& key) const {
    return parse_number(require_str(section, key));
}

int Scenario::get_int(const std::string& section, const std::string& key, int fallback) const {
    if (!has(section, key)) return fallback;
    const double x = parse_number(sections.at(section).at(key));
    const int i = static_cast<int>(x);
    if (x != i) throw ScenarioError("key '" + key + "' must be an integer");
    return i;
}

std::uint64_t Scenario::get_u64(const std::string& section, const std::string& key,
                                std::uint64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string t = trim(sections.at(section).at(key));
    errno = 0;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw ScenarioError("key '" + key + "' must be an unsigned integer, got '" + t + "'");
    return x;
}

bool Scenario::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string t = trim(sections.at(section).at(key));
    if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
    if (t == "0" || t == "false" || t == "no" || t == "off") return false;
    throw ScenarioError("key '" + key + "' must be a boolean, got '" + t + "'");
}

std::vector<double> Scenario::get_values(const std::string& section,
                                         const std::string& key) const {
    return parse_values(require_str(section, key));
}

Params Scenario::params() const {
    Params p;
    bool have_base = false;
    if (sections.count("dimensional")) {
        DimensionalParams dp;
        dp.alpha = get_num("dimensional", "alpha", dp.alpha);
        dp.beta = get_num("dimensional", "beta", dp.beta);
        dp.gamma = get_num("dimensional", "gamma", dp.gamma);
        dp.delta = get_num("dimensional", "delta", dp.delta);
        dp.zeta = get_num("dimensional", "zeta", dp.zeta);
        dp.sigma = get_num("dimensional", "sigma", dp.sigma);
        dp.eta = get_num("dimensional", "eta", dp.eta);
        dp.chi = get_num("dimensional", "chi", dp.chi);
        dp.D1 = get_num("dimensional", "D1", dp.D1);
        dp.D2 = get_num("dimensional", "D2", dp.D2);
        try {
            p = nondimensionalize(dp);
        } catch (const std::domain_error& ex) {
            throw ScenarioError(std::string("[dimensional] section invalid: ") + ex.what());
        }
        have_base = true;
    }
    std::string missing;
    auto root = [&](const char* key, double& slot, bool required) {
        if (has("", key))
            slot = parse_number(sections.at("").at(key));
        else if (required && !have_base)
            missing += missing.empty() ? key : std::string(", ") + key;
    };
    root("a", p.a, true);
    root("b", p.b, true);
    root("e", p.e, true);
    root("f", p.f, true);
    if (!have_base) {
        p.c = 0.0;  // taxis off unless requested
        p.d = 1.0;
    }
    root("c", p.c, false);
    root("d", p.d, false);
    if (!missing.empty())
        throw ScenarioError("missing model parameter(s): " + missing);
    if (!p.valid())
        throw ScenarioError("model parameters out of range (need a,b,d,e,f > 0 and c >= 0)");
    return p;
}

Scenario parse_scenario_text(const std::string& text, const std::string& source_name) {
    Scenario sc;
    sc.source = source_name;
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto err = [&](const std::string& what) {
            return ScenarioError(source_name + ":" + std::to_string(lineno) + ": " + what);
        };
        if (line.front() == '[') {
            if (line.back() != ']') throw err("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw err("empty section name");
            sc.sections[section];  // a header alone creates the section
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw err("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw err("empty key");
        sc.sections[section][key] = value;  // last assignment wins
    }
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

}  // namespace eco
