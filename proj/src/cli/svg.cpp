#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace hamlab::cli::svg {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

std::string header(const std::string& title, const std::optional<std::string>& stamp) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) +
       "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  if (stamp) s += "<!-- generated " + escape(*stamp) + " -->\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) +
       "</text>\n";
  return s;
}

// frame, ticks and labels; returns nothing, callers map with the same ranges
std::string axes(const Range& xr, const Range* yr_x, const Range& yr, const std::string& xl, const std::string& yl) {
  const double x1 = kLeft, x2 = kWidth - kRight, y1 = kTop, y2 = kHeight - kBottom;
  std::string s = "<rect x=\"" + fmt(x1) + "\" y=\"" + fmt(y1) + "\" width=\"" + fmt(x2 - x1) + "\" height=\"" +
                  fmt(y2 - y1) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    const double py = y2 - (y2 - y1) * i / 4.0;
    s += "<line x1=\"" + fmt(x1 - 4) + "\" y1=\"" + fmt(py) + "\" x2=\"" + fmt(x1) + "\" y2=\"" + fmt(py) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(x1 - 6) + "\" y=\"" + fmt(py + 4) + "\" text-anchor=\"end\">" + fmt(fy) + "</text>\n";
    if (yr_x) {
      const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
      const double px = x1 + (x2 - x1) * i / 4.0;
      s += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(y2) + "\" x2=\"" + fmt(px) + "\" y2=\"" + fmt(y2 + 4) +
           "\" stroke=\"black\"/>\n";
      s += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(y2 + 18) + "\" text-anchor=\"middle\">" + fmt(fx) + "</text>\n";
    }
  }
  s += "<text x=\"" + fmt((x1 + x2) / 2) + "\" y=\"" + fmt(kHeight - 18) + "\" text-anchor=\"middle\">" + escape(xl) +
       "</text>\n";
  s += "<text transform=\"translate(20 " + fmt((y1 + y2) / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
       escape(yl) + "</text>\n";
  return s;
}

std::string legend(std::size_t i, const std::string& name, bool dashed) {
  const double x = kWidth - kRight + 14, y = kTop + 16 + 20.0 * static_cast<double>(i);
  const char* color = kPalette[i % std::size(kPalette)];
  std::string s = "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(y - 4) + "\" x2=\"" + fmt(x + 24) + "\" y2=\"" +
                  fmt(y - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
                  (dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
  s += "<text x=\"" + fmt(x + 30) + "\" y=\"" + fmt(y) + "\">" + escape(name) + "</text>\n";
  return s;
}

}  // namespace

std::string render(const LineChart& chart, const std::optional<std::string>& stamp) {
  Range xr, yr;
  for (const auto& s : chart.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.settle();
  yr.settle();
  const double x1 = kLeft, x2 = kWidth - kRight, y1 = kTop, y2 = kHeight - kBottom;
  auto px = [&](double v) { return x1 + (v - xr.lo) / (xr.hi - xr.lo) * (x2 - x1); };
  auto py = [&](double v) { return y2 - (v - yr.lo) / (yr.hi - yr.lo) * (y2 - y1); };

  std::string s = header(chart.title, stamp) + axes(xr, &xr, yr, chart.x_label, chart.y_label);
  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const Series& ser = chart.series[i];
    // thin long series so files stay small; keeps first and last sample
    const std::size_t n = std::min(ser.x.size(), ser.y.size());
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    std::string pts;
    for (std::size_t k = 0; k < n; k += stride) {
      if (!std::isfinite(ser.y[k])) continue;
      pts += fmt(px(ser.x[k])) + "," + fmt(py(ser.y[k])) + " ";
    }
    if (n > 0 && (n - 1) % stride != 0 && std::isfinite(ser.y[n - 1]))
      pts += fmt(px(ser.x[n - 1])) + "," + fmt(py(ser.y[n - 1]));
    s += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[i % std::size(kPalette)]) +
         "\" stroke-width=\"1.5\"" + (ser.dashed ? " stroke-dasharray=\"6 4\"" : "") + " points=\"" + pts + "\"/>\n";
    s += legend(i, ser.name, ser.dashed);
  }
  return s + "</svg>\n";
}

std::string render(const LadderChart& chart, const std::optional<std::string>& stamp) {
  Range yr;
  for (const auto& l : chart.ladders)
    for (double v : l.levels) yr.add(v);
  yr.settle();
  const double x1 = kLeft, x2 = kWidth - kRight, y1 = kTop, y2 = kHeight - kBottom;
  auto py = [&](double v) { return y2 - (v - yr.lo) / (yr.hi - yr.lo) * (y2 - y1); };

  std::string s = header(chart.title, stamp) + axes(yr, nullptr, yr, "", chart.y_label);
  const double col = (x2 - x1) / static_cast<double>(std::max<std::size_t>(1, chart.ladders.size()));
  for (std::size_t i = 0; i < chart.ladders.size(); ++i) {
    const double a = x1 + col * static_cast<double>(i) + 0.15 * col;
    const double b = x1 + col * static_cast<double>(i + 1) - 0.15 * col;
    const char* color = kPalette[i % std::size(kPalette)];
    for (double v : chart.ladders[i].levels) {
      if (!std::isfinite(v) || v < yr.lo || v > yr.hi) continue;
      s += "<line x1=\"" + fmt(a) + "\" y1=\"" + fmt(py(v)) + "\" x2=\"" + fmt(b) + "\" y2=\"" + fmt(py(v)) +
           "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
    }
    s += "<text x=\"" + fmt((a + b) / 2) + "\" y=\"" + fmt(y2 + 18) + "\" text-anchor=\"middle\">" +
         escape(chart.ladders[i].name) + "</text>\n";
  }
  return s + "</svg>\n";
}

}  // namespace hamlab::cli::svg
