#ifndef SPECNORM_REPORT_HPP
#define SPECNORM_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace specnorm {

// shortest round-trip decimal form
std::string num(double x);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    std::string to_string() const;
    void write(const std::string& path) const;
};

struct PlotSeries {
    std::string name;
    std::vector<double> x, y;
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    bool loglog = false;
    bool annotate_slope = false;  // per-series least-squares slope in the label
    std::vector<PlotSeries> series;
};

// least-squares slope of y against x (log-log transforms applied first when
// requested); NaN when fewer than two usable points
double fit_slope(const std::vector<double>& x, const std::vector<double>& y, bool loglog);

// standalone SVG; returns false (nothing written) when every series is empty
bool write_svg_plot(const PlotSpec& spec, const std::string& path);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);
std::uint64_t file_checksum(const std::string& path);  // FNV-1a of contents

struct RunManifest {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> files;  // name -> checksum
    std::vector<std::string> notes;

    void add_file(const std::string& path, const std::string& name);
    void write(const std::string& path) const;
};

}  // namespace specnorm

#endif
