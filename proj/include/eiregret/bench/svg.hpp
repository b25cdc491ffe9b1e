#pragma once

#include <string>
#include <vector>

#include "eiregret/bench/csv.hpp"

namespace eiregret::bench {

struct PlotRange {
  double lo = 0.0;
  double hi = 1.0;
};

// Extends [lo, hi] by 5% of its span on each side; a degenerate span widens
// by 0.5 per side so the axis never collapses.
PlotRange padded_range(double lo, double hi);

// Standalone SVG: per summary one mean polyline plus a translucent CI band
// polygon, shared axes labelled t and R_t/t, and one legend entry per curve.
void emit_plot_svg(const std::vector<SummaryCurve>& summaries,
                   const std::string& path);

}  // namespace eiregret::bench
