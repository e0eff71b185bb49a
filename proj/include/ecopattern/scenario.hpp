#pragma once

// Line-oriented scenario files: `key = value` pairs with optional bracketed
// [section] headers, # comments, plain decimal numbers, comma-separated
// lists, and lo:hi:count range expressions.  The root (pre-section) area
// holds the model parameters, task name, seed, and output directory; each
// task reads its own options from the section named after it.

#include "ecopattern/params.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace eco {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Scenario {
    // section name ("" for the root area) -> key -> raw value text
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string source;  // file path or synthetic name, for diagnostics

    bool has(const std::string& section, const std::string& key) const;
    // Raw text access; require_* throw ScenarioError when the key is absent.
    std::string get_str(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
    std::string require_str(const std::string& section, const std::string& key) const;
    double get_num(const std::string& section, const std::string& key, double fallback) const;
    double require_num(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key,
                          std::uint64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    // Comma-separated list and/or lo:hi:count ranges, concatenated in order.
    std::vector<double> get_values(const std::string& section, const std::string& key) const;

    // Model parameters: root keys a..f override a [dimensional] section when
    // both are present.  Throws ScenarioError listing anything missing.
    Params params() const;
    // Root `task` key ("" when absent).
    std::string task() const { return get_str("", "task", ""); }
};

// Throws ScenarioError on unreadable files or malformed lines.
Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text, const std::string& source_name);

// "0.75:1.15:41" -> 41 evenly spaced values (inclusive endpoints); a plain
// number is a single value; comma-separated pieces concatenate.
std::vector<double> parse_values(const std::string& text);

double parse_number(const std::string& text);  // strict full-token parse

}  // namespace eco
