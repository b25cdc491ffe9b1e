#include "eiregret/bench/svg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace eiregret::bench {

PlotRange padded_range(double lo, double hi) {
  if (!(lo <= hi))
    throw std::invalid_argument("svg: range requires lo <= hi");
  const double span = hi - lo;
  const double pad = span > 0.0 ? 0.05 * span : 0.5;
  return PlotRange{lo - pad, hi + pad};
}

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kLeft = 70;
constexpr int kRight = 24;
constexpr int kTop = 24;
constexpr int kBottom = 56;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

}  // namespace

void emit_plot_svg(const std::vector<SummaryCurve>& summaries,
                   const std::string& path) {
  if (summaries.empty())
    throw std::invalid_argument("svg: at least one summary required");

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const SummaryCurve& s : summaries) {
    if (s.t.empty()) throw std::invalid_argument("svg: empty summary curve");
    const std::size_t n = s.t.size();
    if (s.mean_rt_over_t.size() != n || s.ci_low.size() != n ||
        s.ci_high.size() != n)
      throw std::invalid_argument("svg: summary columns differ in length");
    for (std::size_t i = 0; i < n; ++i) {
      const double vals[] = {s.mean_rt_over_t[i], s.ci_low[i], s.ci_high[i]};
      for (double v : vals) {
        if (!std::isfinite(v))
          throw std::invalid_argument("svg: non-finite summary value");
        y_lo = std::min(y_lo, v);
        y_hi = std::max(y_hi, v);
      }
      x_lo = std::min(x_lo, static_cast<double>(s.t[i]));
      x_hi = std::max(x_hi, static_cast<double>(s.t[i]));
    }
  }
  const PlotRange xr = padded_range(x_lo, x_hi);
  const PlotRange yr = padded_range(y_lo, y_hi);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) {
    return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  const auto py = [&](double y) {
    return kTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Frame and ticks.
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(plot_w) + "\" height=\"" + num(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    svg += "<line x1=\"" + num(px(fx)) + "\" y1=\"" + num(kTop + plot_h) +
           "\" x2=\"" + num(px(fx)) + "\" y2=\"" + num(kTop + plot_h + 5) +
           "\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(kTop + plot_h + 20) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + tick_label(fx) +
           "</text>\n";
    svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py(fy)) +
           "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(py(fy)) +
           "\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(fy) + 4) +
           "\" font-size=\"12\" text-anchor=\"end\">" + tick_label(fy) +
           "</text>\n";
  }

  // CI bands first so every mean line stays on top.
  for (std::size_t k = 0; k < summaries.size(); ++k) {
    const SummaryCurve& s = summaries[k];
    const char* color = kPalette[k % kPaletteSize];
    std::string pts;
    for (std::size_t i = 0; i < s.t.size(); ++i)
      pts += num(px(s.t[i])) + "," + num(py(s.ci_high[i])) + " ";
    for (std::size_t i = s.t.size(); i-- > 0;)
      pts += num(px(s.t[i])) + "," + num(py(s.ci_low[i])) + " ";
    pts.pop_back();
    svg += "<polygon points=\"" + pts + "\" fill=\"" + color +
           "\" opacity=\"0.15\"/>\n";
  }
  for (std::size_t k = 0; k < summaries.size(); ++k) {
    const SummaryCurve& s = summaries[k];
    const char* color = kPalette[k % kPaletteSize];
    std::string pts;
    for (std::size_t i = 0; i < s.t.size(); ++i)
      pts += num(px(s.t[i])) + "," + num(py(s.mean_rt_over_t[i])) + " ";
    pts.pop_back();
    svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
  }

  // Legend, top right inside the frame.
  for (std::size_t k = 0; k < summaries.size(); ++k) {
    const char* color = kPalette[k % kPaletteSize];
    const double ly = kTop + 16 + 18 * static_cast<double>(k);
    svg += "<line x1=\"" + num(kLeft + plot_w - 120) + "\" y1=\"" + num(ly) +
           "\" x2=\"" + num(kLeft + plot_w - 96) + "\" y2=\"" + num(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(kLeft + plot_w - 90) + "\" y=\"" + num(ly + 4) +
           "\" font-size=\"13\">" + upper(summaries[k].label) + "</text>\n";
  }

  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" +
         num(kHeight - 12) + "\" font-size=\"14\" text-anchor=\"middle\">t"
         "</text>\n";
  svg += "<text x=\"16\" y=\"" + num(kTop + plot_h / 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(kTop + plot_h / 2) + ")\">R_t/t</text>\n";
  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("svg: cannot open for write: " + path);
  out << svg;
  out.flush();
  if (!out) throw std::runtime_error("svg: write failed: " + path);
}

}  // namespace eiregret::bench
