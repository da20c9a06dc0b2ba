#include "convexlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace convexlab {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : plot.series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("render_svg: series '" + s.label + "' has mismatched lengths");
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      if (!std::isfinite(s.x[j]) || !std::isfinite(s.y[j]))
        throw std::invalid_argument("render_svg: series '" + s.label + "' has non-finite data");
      x0 = std::min(x0, s.x[j]);
      x1 = std::max(x1, s.x[j]);
      y0 = std::min(y0, s.y[j]);
      y1 = std::max(y1, s.y[j]);
    }
  }
  if (!std::isfinite(x0)) {
    x0 = 0.0;
    x1 = 1.0;
    y0 = 0.0;
    y1 = 1.0;
  }
  if (x1 - x0 <= 0.0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 <= 0.0) {
    const double pad = std::max(std::abs(y0) * 0.05, 0.5);
    y0 -= pad;
    y1 += pad;
  }
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  double sx = pw / (x1 - x0);
  double sy = ph / (y1 - y0);
  if (plot.equal_aspect) {
    const double s = std::min(sx, sy);
    const double cx = 0.5 * (x0 + x1);
    const double cy = 0.5 * (y0 + y1);
    sx = sy = s;
    x0 = cx - pw / (2.0 * s);
    x1 = cx + pw / (2.0 * s);
    y0 = cy - ph / (2.0 * s);
    y1 = cy + ph / (2.0 * s);
  }
  auto px = [&](double x) { return kLeft + (x - x0) * sx; };
  auto py = [&](double y) { return kTop + ph - (y - y0) * sy; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  out += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" +
         escape(plot.title) + "</text>\n";
  out += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(pw) + "\" height=\"" + fixed(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int j = 0; j <= 4; ++j) {
    const double xv = x0 + (x1 - x0) * j / 4.0;
    const double yv = y0 + (y1 - y0) * j / 4.0;
    out += "<text x=\"" + fixed(px(xv)) + "\" y=\"" + fixed(kTop + ph + 20.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + tick(xv) + "</text>\n";
    out += "<text x=\"" + fixed(kLeft - 8.0) + "\" y=\"" + fixed(py(yv) + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + tick(yv) + "</text>\n";
  }
  out += "<text x=\"" + fixed(kLeft + pw / 2.0) + "\" y=\"" + fixed(kHeight - 15.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + escape(plot.x_label) + "</text>\n";
  out += "<text x=\"20\" y=\"" + fixed(kTop + ph / 2.0) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" transform=\"rotate(-90 20 " + fixed(kTop + ph / 2.0) + ")\">" + escape(plot.y_label) +
         "</text>\n";
  int legend = 0;
  for (const auto& s : plot.series) {
    if (s.points) {
      out += "<g fill=\"" + escape(s.color) + "\">\n";
      for (std::size_t j = 0; j < s.x.size(); ++j)
        out += "<circle cx=\"" + fixed(px(s.x[j])) + "\" cy=\"" + fixed(py(s.y[j])) + "\" r=\"2\"/>\n";
      out += "</g>\n";
    } else if (!s.x.empty()) {
      out += std::string(s.closed ? "<polygon" : "<polyline") + " fill=\"none\" stroke=\"" + escape(s.color) +
             "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t j = 0; j < s.x.size(); ++j) {
        if (j) out += ' ';
        out += fixed(px(s.x[j])) + "," + fixed(py(s.y[j]));
      }
      out += "\"/>\n";
    }
    const double ly = kTop + 10.0 + 20.0 * legend++;
    out += "<rect x=\"" + fixed(kWidth - kRight + 12.0) + "\" y=\"" + fixed(ly) + "\" width=\"12\" height=\"12\" fill=\"" +
           escape(s.color) + "\"/>\n";
    out += "<text x=\"" + fixed(kWidth - kRight + 30.0) + "\" y=\"" + fixed(ly + 11.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace convexlab
