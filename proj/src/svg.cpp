#include "qmux/svg.hpp"

#include "qmux/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace qmux {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMargin = 60;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

double to_double(const std::string& s) {
    try {
        return std::stod(s);
    } catch (...) {
        throw ValidationError("malformed CSV: non-numeric field '" + s + "'");
    }
}

struct Frame {
    double x_min, x_max, y_min, y_max;

    double px(double x) const {
        const double span = x_max > x_min ? x_max - x_min : 1.0;
        return kMargin + (x - x_min) / span * (kWidth - 2 * kMargin);
    }
    double py(double y) const {
        const double span = y_max > y_min ? y_max - y_min : 1.0;
        return kHeight - kMargin - (y - y_min) / span * (kHeight - 2 * kMargin);
    }
};

void open_svg(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"15\">" << title << "</text>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& x_label, const std::string& y_label) {
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
        << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 18 "
        << kHeight / 2 << ")\">" << y_label << "</text>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(f.x_min)
        << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(f.x_max)
        << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kHeight - kMargin
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(f.y_min)
        << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kMargin + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(f.y_max)
        << "</text>\n";
}

int require_column(const CsvTable& table, const std::string& name) {
    const int c = table.column(name);
    if (c < 0) {
        throw ValidationError("CSV is missing the '" + name + "' column");
    }
    return c;
}

} // namespace

std::vector<int> histogram_bins(const std::vector<double>& values, int bins) {
    if (values.empty()) {
        throw ValidationError("histogram of empty data");
    }
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    if (hi <= lo) {
        std::vector<int> single(1, static_cast<int>(values.size()));
        return single;
    }
    std::vector<int> counts(bins, 0);
    for (const double v : values) {
        int b = static_cast<int>((v - lo) / (hi - lo) * bins);
        b = std::min(b, bins - 1);
        ++counts[b];
    }
    return counts;
}

std::string render_lines_svg(const CsvTable& table) {
    if (table.rows.empty()) {
        throw ValidationError("lines plot: CSV has no data rows");
    }
    const int ck = require_column(table, "k");
    const int cn1 = require_column(table, "N1");
    const int cn2 = require_column(table, "N2");
    const int cabs = require_column(table, "abs_overhead_ns");
    const int clabel = require_column(table, "circuit");

    // Per (k, circuit label): median gate count and median abs overhead.
    std::map<int, std::map<std::string, std::vector<std::pair<double, double>>>> samples;
    for (const auto& row : table.rows) {
        const int k = static_cast<int>(to_double(row[ck]));
        const double gates = to_double(row[cn1]) + to_double(row[cn2]);
        samples[k][row[clabel]].emplace_back(gates, to_double(row[cabs]));
    }
    std::map<int, std::vector<std::pair<double, double>>> series;
    Frame f{1e300, -1e300, 0.0, -1e300};
    for (const auto& [k, by_label] : samples) {
        for (const auto& [label, pts] : by_label) {
            std::vector<double> xs;
            std::vector<double> ys;
            for (const auto& [x, y] : pts) {
                xs.push_back(x);
                ys.push_back(y);
            }
            const double mx = median(xs);
            const double my = median(ys);
            series[k].emplace_back(mx, my);
            f.x_min = std::min(f.x_min, mx);
            f.x_max = std::max(f.x_max, mx);
            f.y_max = std::max(f.y_max, my);
        }
    }
    if (f.y_max <= f.y_min) {
        f.y_max = f.y_min + 1;
    }

    std::ostringstream out;
    open_svg(out, "serialization overhead vs gate count");
    axes(out, f, "gates (N1+N2, routed)", "median abs overhead [ns]");
    int color = 0;
    for (auto& [k, pts] : series) {
        std::sort(pts.begin(), pts.end());
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 10] << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts) {
            out << fmt(f.px(x)) << "," << fmt(f.py(y)) << " ";
        }
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << kMargin + 14 * color
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << kPalette[color % 10] << "\">k="
            << k << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_hist_svg(const CsvTable& table) {
    if (table.rows.empty()) {
        throw ValidationError("hist plot: CSV has no data rows");
    }
    const int crel = require_column(table, "rel_overhead");
    std::vector<double> values;
    for (const auto& row : table.rows) {
        values.push_back(to_double(row[crel]));
    }
    const auto counts = histogram_bins(values);
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    const int max_count = *std::max_element(counts.begin(), counts.end());

    Frame f{lo, hi > lo ? hi : lo + 1, 0.0, static_cast<double>(max_count)};
    std::ostringstream out;
    open_svg(out, "relative overhead distribution");
    axes(out, f, "rel overhead (serialized/routed)", "count");
    const double bin_w = (f.x_max - f.x_min) / static_cast<double>(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double x0 = f.px(f.x_min + bin_w * static_cast<double>(b));
        const double x1 = f.px(f.x_min + bin_w * static_cast<double>(b + 1));
        const double y = f.py(counts[b]);
        out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(x1 - x0 - 1)
            << "\" height=\"" << fmt(static_cast<double>(kHeight - kMargin) - y)
            << "\" fill=\"#1f77b4\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_breakdown_svg(const CsvTable& table) {
    if (table.rows.empty()) {
        throw ValidationError("breakdown plot: CSV has no data rows");
    }
    const int ck = require_column(table, "k");
    const int ct = require_column(table, "t_translated_ns");
    const int cr = require_column(table, "t_routed_ns");
    const int cs = require_column(table, "t_serialized_ns");

    std::map<int, std::vector<std::array<double, 3>>> per_k;
    for (const auto& row : table.rows) {
        per_k[static_cast<int>(to_double(row[ck]))].push_back(
            {to_double(row[ct]), to_double(row[cr]), to_double(row[cs])});
    }
    struct Bar {
        int k;
        double translated, routing, serialization;
    };
    std::vector<Bar> bars;
    double y_max = 0;
    for (const auto& [k, rows] : per_k) {
        std::vector<double> t, r, s;
        for (const auto& v : rows) {
            t.push_back(v[0]);
            r.push_back(v[1]);
            s.push_back(v[2]);
        }
        Bar bar{k, median(t), median(r) - median(t), median(s) - median(r)};
        y_max = std::max(y_max, bar.translated + bar.routing + bar.serialization);
        bars.push_back(bar);
    }

    Frame f{0, static_cast<double>(bars.size()), 0, y_max > 0 ? y_max : 1};
    std::ostringstream out;
    open_svg(out, "duration breakdown per k");
    axes(out, f, "k (qubits per switch)", "duration [ns]");
    const double slot = (kWidth - 2.0 * kMargin) / static_cast<double>(bars.size());
    const char* colors[3] = {"#333333", "#9ecae1", "#2ca02c"};
    const char* names[3] = {"translated", "routing", "serialization"};
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const double x = kMargin + slot * (static_cast<double>(i) + 0.25);
        const double w = slot * 0.5;
        double acc = 0;
        const double parts[3] = {bars[i].translated, bars[i].routing, bars[i].serialization};
        for (int p = 0; p < 3; ++p) {
            const double y0 = f.py(acc);
            const double y1 = f.py(acc + parts[p]);
            out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y1) << "\" width=\"" << fmt(w) << "\" height=\""
                << fmt(y0 - y1) << "\" fill=\"" << colors[p] << "\"/>\n";
            acc += parts[p];
        }
        out << "<text x=\"" << fmt(x + w / 2) << "\" y=\"" << kHeight - kMargin + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << bars[i].k
            << "</text>\n";
    }
    for (int p = 0; p < 3; ++p) {
        out << "<rect x=\"" << kWidth - kMargin - 110 << "\" y=\"" << kMargin + 16 * p
            << "\" width=\"10\" height=\"10\" fill=\"" << colors[p] << "\"/>\n";
        out << "<text x=\"" << kWidth - kMargin - 95 << "\" y=\"" << kMargin + 16 * p + 9
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << names[p] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace qmux
