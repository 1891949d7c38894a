#include "specnorm/report.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace specnorm {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    // try shorter forms that still round-trip
    for (int prec = 1; prec < 17; ++prec) {
        char t[40];
        std::snprintf(t, sizeof t, "%.*g", prec, x);
        if (std::strtod(t, nullptr) == x) return t;
    }
    return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size()) throw std::invalid_argument("CsvTable: row width mismatch");
    rows.push_back(std::move(cells));
}

namespace {
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}
}  // namespace

std::string CsvTable::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << csv_escape(columns[i]);
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
        out << '\n';
    }
    return out.str();
}

void CsvTable::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_string();
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys, bool loglog) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        double x = xs[i], y = ys[i];
        if (loglog) {
            if (x <= 0.0 || y <= 0.0) continue;
            x = std::log(x);
            y = std::log(y);
        }
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::nan("");
    double den = n * sxx - sx * sx;
    if (den == 0.0) return std::nan("");
    return (n * sxy - sx * sy) / den;
}

bool write_svg_plot(const PlotSpec& spec, const std::string& path) {
    bool any = false;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto tx = [&](double v) { return spec.loglog ? std::log10(v) : v; };
    for (const auto& s : spec.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double x = s.x[i], y = s.y[i];
            if (spec.loglog && (x <= 0.0 || y <= 0.0)) continue;
            any = true;
            xmin = std::min(xmin, tx(x));
            xmax = std::max(xmax, tx(x));
            ymin = std::min(ymin, tx(y));
            ymax = std::max(ymax, tx(y));
        }
    if (!any) return false;
    if (xmax - xmin < 1e-12) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
    auto px = [&](double x) { return L + (tx(x) - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (tx(y) - ymin) / (ymax - ymin) * (H - T - B); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << spec.title << "</text>\n"
        << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    // axis end labels (transformed back for log-log)
    auto label = [&](double t) { return num(spec.loglog ? std::pow(10.0, t) : t); };
    svg << "<text x=\"" << L << "\" y=\"" << H - B + 18 << "\" font-size=\"11\">" << label(xmin)
        << "</text>\n"
        << "<text x=\"" << W - R << "\" y=\"" << H - B + 18
        << "\" text-anchor=\"end\" font-size=\"11\">" << label(xmax) << "</text>\n"
        << "<text x=\"" << L - 6 << "\" y=\"" << H - B << "\" text-anchor=\"end\" font-size=\"11\">"
        << label(ymin) << "</text>\n"
        << "<text x=\"" << L - 6 << "\" y=\"" << T + 10
        << "\" text-anchor=\"end\" font-size=\"11\">" << label(ymax) << "</text>\n"
        << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">" << spec.xlabel << "</text>\n"
        << "<text x=\"16\" y=\"" << (T + H - B) / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
        << (T + H - B) / 2 << ")\">" << spec.ylabel << "</text>\n";

    int ci = 0;
    double legend_y = T + 8;
    for (const auto& s : spec.series) {
        const char* col = colors[ci++ % 6];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (spec.loglog && (s.x[i] <= 0.0 || s.y[i] <= 0.0)) continue;
            pts << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            svg << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
                << "\" r=\"3\" fill=\"" << col << "\"/>\n";
        }
        svg << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << col
            << "\" stroke-width=\"1.5\"/>\n";
        std::string name = s.name;
        if (spec.annotate_slope) {
            double slope = fit_slope(s.x, s.y, spec.loglog);
            if (!std::isnan(slope)) {
                char buf[64];
                std::snprintf(buf, sizeof buf, " (slope %.3f)", slope);
                name += buf;
            }
        }
        svg << "<text x=\"" << W - R - 4 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << col << "\">" << name
            << "</text>\n";
        legend_y += 15;
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << svg.str();
    return true;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}

std::uint64_t file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64(ss.str());
}

void RunManifest::add_file(const std::string& path, const std::string& name) {
    files.emplace_back(name, hex64(file_checksum(path)));
}

void RunManifest::write(const std::string& path) const {
    nlohmann::json j;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["files"] = nlohmann::json::object();
    for (const auto& [name, sum] : files) j["files"][name] = sum;
    j["notes"] = notes;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace specnorm
