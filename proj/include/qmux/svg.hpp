#pragma once

#include "qmux/analysis.hpp"

#include <string>

namespace qmux {

/// Deterministic standalone SVG charts rendered from an analysis CSV table;
/// no display server or raster backend involved.
///
/// lines:     median abs overhead vs gate count (N1+N2), one polyline per k.
/// hist:      histogram of rel_overhead, 20 equal-width bins over the range.
/// breakdown: stacked translated / routing / serialization medians per k.
std::string render_lines_svg(const CsvTable& table);
std::string render_hist_svg(const CsvTable& table);
std::string render_breakdown_svg(const CsvTable& table);

/// Reference binning used by render_hist_svg, exposed for checks: returns the
/// count per bin for 20 equal-width bins spanning [min, max] of the values
/// (a single degenerate bin when min == max).
std::vector<int> histogram_bins(const std::vector<double>& values, int bins = 20);

} // namespace qmux
