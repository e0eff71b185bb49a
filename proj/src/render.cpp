#include "ecopattern/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "ecopattern/output.hpp"

namespace eco {

namespace {

const char* kPalette[] = {"#1f6feb", "#d1242f", "#2da44e", "#8250df", "#bf8700"};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Box {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
};

Box data_box(const std::vector<Series>& series) {
    Box b;
    bool any = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s.pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!any) {
                b = {x, x, y, y};
                any = true;
            } else {
                b.x0 = std::min(b.x0, x);
                b.x1 = std::max(b.x1, x);
                b.y0 = std::min(b.y0, y);
                b.y1 = std::max(b.y1, y);
            }
        }
    if (!any) b = {0, 1, 0, 1};
    auto widen = [](double& lo, double& hi) {
        if (hi - lo <= 0) {
            const double pad = std::max(1.0, std::abs(lo)) * 0.5;
            lo -= pad;
            hi += pad;
        } else {
            const double pad = (hi - lo) * 0.05;
            lo -= pad;
            hi += pad;
        }
    };
    widen(b.x0, b.x1);
    widen(b.y0, b.y1);
    return b;
}

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series, int width, int height) {
    const double ml = 70, mr = 20, mt = 40, mb = 52;
    const double pw = width - ml - mr, ph = height - mt - mb;
    const Box b = data_box(series);
    const auto X = [&](double x) { return ml + (x - b.x0) / (b.x1 - b.x0) * pw; };
    const auto Y = [&](double y) { return mt + (1.0 - (y - b.y0) / (b.y1 - b.y0)) * ph; };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << px(width / 2.0)
        << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";

    // frame and ticks
    out << "<rect x=\"" << px(ml) << "\" y=\"" << px(mt) << "\" width=\"" << px(pw)
        << "\" height=\"" << px(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double fx = b.x0 + (b.x1 - b.x0) * i / nticks;
        const double fy = b.y0 + (b.y1 - b.y0) * i / nticks;
        const double gx = X(fx), gy = Y(fy);
        out << "<line x1=\"" << px(gx) << "\" y1=\"" << px(mt + ph) << "\" x2=\"" << px(gx)
            << "\" y2=\"" << px(mt + ph + 5) << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << px(gx) << "\" y=\"" << px(mt + ph + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_g6(fx) << "</text>\n";
        out << "<line x1=\"" << px(ml - 5) << "\" y1=\"" << px(gy) << "\" x2=\"" << px(ml)
            << "\" y2=\"" << px(gy) << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << px(ml - 8) << "\" y=\"" << px(gy + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_g6(fy)
            << "</text>\n";
    }
    out << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << px(height - 12.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << px(mt + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 16 "
        << px(mt + ph / 2) << ")\">" << y_label << "</text>\n";

    // data
    for (const auto& s : series) {
        const char* stroke = s.color.c_str();
        std::vector<std::pair<double, double>> run;
        auto flush = [&] {
            if (run.size() >= 2) {
                out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"";
                if (s.dashed) out << " stroke-dasharray=\"6 4\"";
                out << " points=\"";
                for (std::size_t i = 0; i < run.size(); ++i)
                    out << (i ? " " : "") << px(X(run[i].first)) << ',' << px(Y(run[i].second));
                out << "\"/>\n";
            }
            run.clear();
        };
        for (const auto& [x, y] : s.pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) {
                flush();
                continue;
            }
            run.emplace_back(x, y);
            if (s.markers)
                out << "<circle cx=\"" << px(X(x)) << "\" cy=\"" << px(Y(y))
                    << "\" r=\"2.5\" fill=\"" << stroke << "\"/>\n";
        }
        flush();
    }

    // legend
    double ly = mt + 14;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        out << "<line x1=\"" << px(ml + pw - 150) << "\" y1=\"" << px(ly - 4) << "\" x2=\""
            << px(ml + pw - 120) << "\" y2=\"" << px(ly - 4) << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"";
        if (s.dashed) out << " stroke-dasharray=\"6 4\"";
        out << "/>\n";
        out << "<text x=\"" << px(ml + pw - 112) << "\" y=\"" << px(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
        ly += 18;
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed on " + path);
}

namespace {

double cell_num(const std::string& s) {
    return s.empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(s);
}

void require_rows(const CsvTable& t, const std::string& name) {
    if (t.rows.empty()) throw std::runtime_error("no data rows in " + name);
}

std::vector<std::string> render_trajectory(const std::string& dir, const CsvTable& t) {
    Series su{"u", {}, kPalette[0]}, sv{"v", {}, kPalette[1]};
    const int ct = t.column("t"), cu = t.column("u"), cv = t.column("v");
    for (const auto& r : t.rows) {
        su.pts.emplace_back(cell_num(r[ct]), cell_num(r[cu]));
        sv.pts.emplace_back(cell_num(r[ct]), cell_num(r[cv]));
    }
    const std::string p1 = join_path(dir, "trajectory.svg");
    write_svg_chart(p1, "kinetics trajectory", "t", "density", {su, sv});
    Series ph{"orbit", {}, kPalette[3]};
    for (const auto& r : t.rows) ph.pts.emplace_back(cell_num(r[cu]), cell_num(r[cv]));
    const std::string p2 = join_path(dir, "phase.svg");
    write_svg_chart(p2, "phase portrait", "u", "v", {ph});
    return {"trajectory.svg", "phase.svg"};
}

std::vector<std::string> render_branch(const std::string& dir, const CsvTable& t) {
    Series st{"stable", {}, kPalette[0], false};
    Series un{"unstable", {}, kPalette[1], true};
    const int cc = t.column("control"), cu = t.column("u_section"), cs = t.column("stability");
    for (const auto& r : t.rows) {
        const double x = cell_num(r[cc]), y = cell_num(r[cu]);
        if (r[cs] == "stable")
            st.pts.emplace_back(x, y);
        else
            un.pts.emplace_back(x, y);
    }
    const std::string p = join_path(dir, "branch.svg");
    write_svg_chart(p, "periodic-orbit branch", "control", "section u", {st, un});
    return {"branch.svg"};
}

std::vector<std::string> render_dispersion(const std::string& dir, const CsvTable& t) {
    Series sh{"H(k)", {}, kPalette[0]}, stt{"T(k)", {}, kPalette[1]},
        sl{"Re lambda", {}, kPalette[2]};
    const int ck = t.column("k"), cT = t.column("T"), cH = t.column("H"),
              cl = t.column("re_lambda");
    for (const auto& r : t.rows) {
        const double k = cell_num(r[ck]);
        sh.pts.emplace_back(k, cell_num(r[cH]));
        stt.pts.emplace_back(k, cell_num(r[cT]));
        sl.pts.emplace_back(k, cell_num(r[cl]));
    }
    const std::string p = join_path(dir, "dispersion.svg");
    write_svg_chart(p, "dispersion relation", "Laplacian eigenvalue k", "value", {sh, stt, sl});
    return {"dispersion.svg"};
}

std::vector<std::string> render_amplitude(const std::string& dir, const CsvTable& t) {
    // one stable (solid) and one unstable (dashed) series per branch label
    std::map<std::string, Series> stable, unstable;
    const int cc = t.column("c"), cs = t.column("A_stable"), cu = t.column("A_unstable"),
              cb = t.column("branch");
    int color = 0;
    for (const auto& r : t.rows) {
        const std::string br = r[cb];
        if (!stable.count(br)) {
            const char* col = kPalette[color++ % 5];
            stable[br] = Series{br + " stable", {}, col, false};
            unstable[br] = Series{br + " unstable", {}, col, true};
        }
        const double c = cell_num(r[cc]);
        if (!r[cs].empty()) stable[br].pts.emplace_back(c, cell_num(r[cs]));
        if (!r[cu].empty()) unstable[br].pts.emplace_back(c, cell_num(r[cu]));
    }
    std::vector<Series> series;
    for (auto& [br, s] : stable)
        if (!s.pts.empty()) series.push_back(std::move(s));
    for (auto& [br, s] : unstable)
        if (!s.pts.empty()) series.push_back(std::move(s));
    const std::string p = join_path(dir, "amplitude.svg");
    write_svg_chart(p, "pattern amplitude vs taxis strength", "c", "u at x=0", series);
    return {"amplitude.svg"};
}

std::vector<std::string> render_transient(const std::string& dir, const CsvTable& t) {
    Series s{"dwell", {}, kPalette[0]};
    s.markers = true;
    const int cf = t.column("f"), cd = t.column("dwell");
    for (const auto& r : t.rows) s.pts.emplace_back(cell_num(r[cf]), cell_num(r[cd]));
    const std::string p = join_path(dir, "transient.svg");
    write_svg_chart(p, "ghost dwell time", "f", "dwell time", {s});
    return {"transient.svg"};
}

std::vector<std::string> render_frames(const std::string& dir, const CsvTable& t) {
    const int ct = t.column("t"), cx = t.column("x"), cu = t.column("u"), cv = t.column("v");
    (void)cx;
    std::vector<std::vector<double>> uimg, vimg;
    std::string last_t;
    for (const auto& r : t.rows) {
        if (r[ct] != last_t || uimg.empty()) {
            uimg.emplace_back();
            vimg.emplace_back();
            last_t = r[ct];
        }
        uimg.back().push_back(cell_num(r[cu]));
        vimg.back().push_back(cell_num(r[cv]));
    }
    for (std::size_t i = 1; i < uimg.size(); ++i)
        if (uimg[i].size() != uimg[0].size())
            throw std::runtime_error("frames.csv rows do not form a complete space-time grid");
    write_pgm(join_path(dir, "u.pgm"), uimg);
    write_pgm(join_path(dir, "v.pgm"), vimg);
    return {"u.pgm", "u.pgm.txt", "v.pgm", "v.pgm.txt"};
}

std::vector<std::string> render_surface(const std::string& dir, const CsvTable& t) {
    const int cf = t.column("f"), cd = t.column("d"), cc = t.column("c_T");
    std::vector<double> fs, ds;
    for (const auto& r : t.rows) {
        const double f = cell_num(r[cf]), d = cell_num(r[cd]);
        if (fs.empty() || fs.back() != f) {
            if (std::find(fs.begin(), fs.end(), f) == fs.end()) fs.push_back(f);
        }
        if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
    }
    if (fs.size() * ds.size() != t.rows.size())
        return {};  // not a complete grid; skip the heatmap
    // min over present values stands in for infeasible (blank) cells
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& r : t.rows) {
        const double c = cell_num(r[cc]);
        if (std::isfinite(c)) lo = std::min(lo, c);
    }
    if (!std::isfinite(lo)) return {};
    std::vector<std::vector<double>> img(fs.size(), std::vector<double>(ds.size(), lo));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double c = cell_num(t.rows[i][cc]);
        img[i / ds.size()][i % ds.size()] = std::isfinite(c) ? c : lo;
    }
    write_pgm(join_path(dir, "surface.pgm"), img);
    return {"surface.pgm", "surface.pgm.txt"};
}

}  // namespace

std::vector<std::string> render_outputs(const std::string& dir) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("output directory '" + dir + "' does not exist");
    struct Entry {
        const char* file;
        std::vector<std::string> (*fn)(const std::string&, const CsvTable&);
    };
    const Entry entries[] = {
        {"trajectory.csv", render_trajectory}, {"branch.csv", render_branch},
        {"dispersion.csv", render_dispersion}, {"amplitude.csv", render_amplitude},
        {"transient.csv", render_transient},   {"frames.csv", render_frames},
        {"surface.csv", render_surface},
    };
    std::vector<std::string> produced;
    for (const auto& e : entries) {
        const std::string path = join_path(dir, e.file);
        if (!std::filesystem::exists(path)) continue;
        CsvTable t = read_csv(path);
        require_rows(t, e.file);
        auto files = e.fn(dir, t);
        produced.insert(produced.end(), files.begin(), files.end());
    }
    if (produced.empty())
        throw std::runtime_error("nothing renderable in '" + dir + "'");
    return produced;
}

}  // namespace eco
