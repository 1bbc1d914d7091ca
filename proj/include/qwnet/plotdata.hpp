#pragma once

#include "qwnet/harness.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qwnet {

class PlotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PlotFile {
    std::string name;  // file name inside the output directory
    std::string title;
    std::string x;     // column used as abscissa
    std::vector<std::string> series;
    Table data;
};

/// Figure-class data files for a run, sweep-summary or sweep-series table.
/// Throws PlotError for tables with no rows or an unsupported kind.
std::vector<PlotFile> plot_files(const Table& records);

/// Whitespace-separated columns with a `#` header line.
std::string format_dat(const Table& data);

/// Minimal line chart of `series` against `x`.
std::string render_svg(const PlotFile& file);

/// Writes every plot-data file plus manifest.txt (and one .svg per file when
/// `svg` is set) into `out_dir`. Either all files appear or none do. Returns
/// the paths written.
std::vector<std::filesystem::path> emit_plotdata(const Table& records, const std::filesystem::path& out_dir,
                                                 bool svg = false);

}  // namespace qwnet
