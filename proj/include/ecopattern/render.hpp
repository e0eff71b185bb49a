#pragma once

// Hand-rolled SVG line charts and graymap regeneration for task outputs.
// Rendering is byte-deterministic for fixed inputs: fixed canvas, fixed tick
// logic, fixed number formatting, no timestamps.

#include <string>
#include <utility>
#include <vector>

namespace eco {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> pts;
    std::string color = "#1f6feb";
    bool dashed = false;
    bool markers = false;  // draw small circles instead of/in addition to the line
};

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series, int width = 860, int height = 540);

// Scans `dir` for known CSV outputs and renders charts/heatmaps next to
// them.  Returns the list of files produced.  Throws std::runtime_error when
// nothing renderable is present or a renderable file has no data rows.
std::vector<std::string> render_outputs(const std::string& dir);

}  // namespace eco
