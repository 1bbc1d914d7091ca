#include "qwnet/plotdata.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <system_error>

namespace qwnet {

namespace fs = std::filesystem;

namespace {

Table select(const Table& src, const std::vector<std::string>& cols, std::size_t first_row, std::size_t last_row) {
    Table t;
    t.kind = "plot";
    t.columns = cols;
    std::vector<std::size_t> idx;
    for (const auto& c : cols) idx.push_back(src.column(c));
    for (std::size_t r = first_row; r < last_row; ++r) {
        std::vector<std::string> row;
        for (auto i : idx) row.push_back(src.rows[r][i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string sanitize(std::string s) {
    for (auto& c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-')) c = '_';
    return s;
}

}  // namespace

std::vector<PlotFile> plot_files(const Table& records) {
    if (records.rows.empty()) throw PlotError("no records to plot");
    std::vector<PlotFile> files;
    const std::size_t nrows = records.rows.size();

    if (records.kind == "run") {
        files.push_back({"occupation.dat", "Occupation probability vs. step", "step",
                         {"P_source", "P_target", "loss"},
                         select(records, {"step", "P_source", "P_target", "loss"}, 0, nrows)});
        files.push_back({"entropy.dat", "Pair entanglement vs. step", "step",
                         {"E_st", "E_t_rand", "negativity_st"},
                         select(records, {"step", "E_st", "E_t_rand", "negativity_st"}, 0, nrows)});
    } else if (records.kind == "sweep-summary") {
        const std::string axis = records.columns.front();
        files.push_back({"summary.dat", "Time-averaged occupation vs. " + axis, axis,
                         {"mean_P_pair", "mean_loss"},
                         select(records, {axis, "mean_P_pair", "mean_loss", "sd_P_pair", "sd_loss"}, 0, nrows)});
    } else if (records.kind == "sweep-series") {
        const std::string axis = records.columns.front();
        const std::vector<std::string> cols = {"step",    "mean_P_pair", "sd_P_pair",     "mean_loss",    "sd_loss",
                                               "mean_E_st", "sd_E_st",   "mean_E_t_rand", "sd_E_t_rand"};
        std::size_t start = 0;
        while (start < nrows) {
            std::size_t end = start;
            while (end < nrows && records.rows[end][0] == records.rows[start][0]) ++end;
            const std::string grid = records.rows[start][0];
            files.push_back({"series_" + axis + sanitize(grid) + ".dat",
                             "Instance-averaged series at " + axis + "=" + grid, "step",
                             {"mean_P_pair", "mean_loss", "mean_E_st", "mean_E_t_rand"},
                             select(records, cols, start, end)});
            start = end;
        }
    } else {
        throw PlotError("cannot plot table of kind \"" + records.kind + "\"");
    }
    return files;
}

std::string format_dat(const Table& data) {
    std::string out = "#";
    for (const auto& c : data.columns) out += " " + c;
    out += "\n";
    for (const auto& row : data.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + row[i];
        out += "\n";
    }
    return out;
}

std::string render_svg(const PlotFile& file) {
    constexpr double width = 640, height = 400;
    constexpr double left = 60, right = 150, top = 30, bottom = 40;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

    const auto xcol = file.data.column(file.x);
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = 0.0, ymax = 1.0;
    for (std::size_t r = 0; r < file.data.rows.size(); ++r) {
        if (const auto x = file.data.number(r, xcol)) {
            xmin = std::min(xmin, *x);
            xmax = std::max(xmax, *x);
        }
        for (const auto& s : file.series) {
            if (const auto y = file.data.number(r, s)) {
                ymin = std::min(ymin, *y);
                ymax = std::max(ymax, *y);
            }
        }
    }
    if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
    if (xmax == xmin) xmax = xmin + 1.0;

    const double pw = width - left - right, ph = height - top - bottom;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return std::string(buf);
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
                      "font-family=\"sans-serif\" font-size=\"11\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(left) + "\" y=\"18\" font-size=\"13\">" + file.title + "</text>\n";
    svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(left) + "\" y=\"" + num(height - 12) + "\">" + num(xmin) + "</text>\n";
    svg += "<text x=\"" + num(left + pw) + "\" y=\"" + num(height - 12) + "\" text-anchor=\"end\">" + num(xmax) +
           "</text>\n";
    svg += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(height - 12) + "\" text-anchor=\"middle\">" +
           file.x + "</text>\n";
    svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(top + 4) + "\" text-anchor=\"end\">" + num(ymax) +
           "</text>\n";
    svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(top + ph) + "\" text-anchor=\"end\">" + num(ymin) +
           "</text>\n";

    for (std::size_t i = 0; i < file.series.size(); ++i) {
        const char* colour = palette[i % std::size(palette)];
        const auto ycol = file.data.column(file.series[i]);
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" points=\"" + points + "\"/>\n";
                points.clear();
            }
        };
        for (std::size_t r = 0; r < file.data.rows.size(); ++r) {
            const auto x = file.data.number(r, xcol);
            const auto y = file.data.number(r, ycol);
            if (!x || !y) {
                flush();
                continue;
            }
            points += (points.empty() ? "" : " ") + num(px(*x)) + "," + num(py(*y));
        }
        flush();
        const double ly = top + 14.0 * static_cast<double>(i + 1);
        svg += "<line x1=\"" + num(width - right + 10) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
               num(width - right + 30) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + colour + "\"/>\n";
        svg += "<text x=\"" + num(width - right + 34) + "\" y=\"" + num(ly) + "\">" + file.series[i] + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::vector<fs::path> emit_plotdata(const Table& records, const fs::path& out_dir, bool svg) {
    const auto files = plot_files(records);

    std::map<std::string, std::string> contents;
    std::string manifest = "# plot-data manifest (source kind=" + records.kind + ")\n";
    for (const auto& f : files) {
        contents[f.name] = format_dat(f.data);
        manifest += f.name + ": " + f.title + "; x=" + f.x + "; y=";
        for (std::size_t i = 0; i < f.series.size(); ++i) manifest += (i ? "," : "") + f.series[i];
        manifest += "; columns=";
        for (std::size_t i = 0; i < f.data.columns.size(); ++i) manifest += (i ? "," : "") + f.data.columns[i];
        manifest += "\n";
        if (svg) contents[f.name.substr(0, f.name.size() - 4) + ".svg"] = render_svg(f);
    }
    if (records.kind == "sweep-summary" || records.kind == "sweep-series") {
        manifest += "note: sd columns are sample standard deviations over instances; rows near p=1 are reported "
                    "as computed\n";
    }
    contents["manifest.txt"] = manifest;

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw PlotError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    }

    // Stage under temporary names, then rename, so a failure leaves nothing behind.
    std::vector<std::pair<fs::path, fs::path>> staged;
    auto discard = [&] {
        for (const auto& [tmp, _] : staged) fs::remove(tmp, ec);
    };
    for (const auto& [name, text] : contents) {
        const fs::path final_path = out_dir / name;
        const fs::path tmp = out_dir / (name + ".tmp");
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            discard();
            throw PlotError("cannot write " + tmp.string());
        }
        staged.emplace_back(tmp, final_path);
        out << text;
        out.close();
        if (!out) {
            discard();
            throw PlotError("write failed for " + tmp.string());
        }
    }
    std::vector<fs::path> written;
    for (const auto& [tmp, final_path] : staged) {
        fs::rename(tmp, final_path);
        written.push_back(final_path);
    }
    return written;
}

}  // namespace qwnet
