#pragma once

// Deterministic artifact writers: comma-separated CSV with a header row, LF
// line endings and 17-significant-digit floats; plain-text P2 graymaps with a
// min/max sidecar; and the run manifest.

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace eco {

inline constexpr const char* kToolName = "ecopattern";
inline constexpr const char* kToolVersion = "0.1.0";

// "%.17g" rendering, enough digits to round-trip a double exactly.
std::string fmt_g17(double x);
// "%.6g" rendering for axis labels and diagnostics.
std::string fmt_g6(double x);

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    // Cells are pre-rendered text; use fmt_g17 for numbers, "" for blank.
    void row(const std::vector<std::string>& cells);
    const std::string& path() const { return path_; }
    std::size_t rows_written() const { return rows_; }

  private:
    std::string path_;
    std::ofstream out_;
    std::size_t n_cols_ = 0;
    std::size_t rows_ = 0;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int column(const std::string& name) const;  // -1 when absent
};

// Reads a CSV produced by CsvWriter; throws std::runtime_error on missing
// files or ragged rows.
CsvTable read_csv(const std::string& path);

// Writes `path` as ASCII PGM (P2) with values linearly mapped from
// [min,max] over all cells to 0..255, plus a `<path>.txt` sidecar recording
// the mapping.  `rows` is indexed [row][col]; row 0 is the top scanline.
void write_pgm(const std::string& path, const std::vector<std::vector<double>>& rows);

// Run manifest: everything needed to re-run the scenario exactly, plus what
// the run produced.  Written as manifest.json in the output directory.
struct ManifestInfo {
    std::string task;
    std::string scenario_file;
    std::map<std::string, std::map<std::string, std::string>> scenario;  // resolved keys
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
    int workers = 1;
    std::vector<std::string> outputs;  // file names relative to the directory
    std::string status = "ok";
    double wall_time_seconds = 0;
    std::vector<std::pair<std::size_t, std::string>> failures;  // sweep job failures
};

void write_manifest(const std::string& dir, const ManifestInfo& info);

// mkdir -p equivalent; throws std::runtime_error on failure.
void ensure_directory(const std::string& dir);

std::string join_path(const std::string& dir, const std::string& name);

}  // namespace eco
