#include "dnlslab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace dnlslab {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Axis {
  double lo, hi;
  bool log;
  double map(double v, double pix_lo, double pix_hi) const {
    double t = log ? (std::log10(v) - std::log10(lo)) /
                         (std::log10(hi) - std::log10(lo))
                   : (v - lo) / (hi - lo);
    return pix_lo + t * (pix_hi - pix_lo);
  }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int e0 = static_cast<int>(std::floor(std::log10(lo)));
      const int e1 = static_cast<int>(std::ceil(std::log10(hi)));
      for (int e = e0; e <= e1; ++e) {
        const double v = std::pow(10.0, e);
        if (v >= lo * 0.999 && v <= hi * 1.001) out.push_back(v);
      }
      if (out.size() < 2) out = {lo, hi};
    } else {
      const double span = hi - lo;
      const double raw = span / 5.0;
      const double mag = std::pow(10.0, std::floor(std::log10(raw)));
      double step = mag;
      for (double mult : {1.0, 2.0, 5.0, 10.0})
        if (raw <= mult * mag) {
          step = mult * mag;
          break;
        }
      for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span;
           v += step)
        out.push_back(v);
    }
    return out;
  }
};

} // namespace

std::string render_line_plot(const PlotSpec& spec,
                             const std::vector<PlotSeries>& series) {
  const double ml = 70, mr = 20, mt = 40, mb = 55;
  const double x0 = ml, x1 = spec.width - mr;
  const double y0 = spec.height - mb, y1 = mt; // y grows downward in SVG

  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (spec.log_x && !(s.x[i] > 0)) continue;
      if (spec.log_y && !(s.y[i] > 0)) continue;
      lo_x = std::min(lo_x, s.x[i]);
      hi_x = std::max(hi_x, s.x[i]);
      lo_y = std::min(lo_y, s.y[i]);
      hi_y = std::max(hi_y, s.y[i]);
    }
  if (!(lo_x < hi_x)) {
    lo_x = lo_x - 1;
    hi_x = hi_x + 1;
  }
  if (!(lo_y < hi_y)) {
    lo_y -= 1;
    hi_y += 1;
  }
  if (!spec.log_y) {
    const double pad = 0.05 * (hi_y - lo_y);
    lo_y -= pad;
    hi_y += pad;
  }
  Axis ax{lo_x, hi_x, spec.log_x};
  Axis ay{lo_y, hi_y, spec.log_y};

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(spec.width) + "\" height=\"" + num(spec.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(spec.width / 2.0) + "\" y=\"22\" font-size=\"15\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\">" + spec.title +
         "</text>\n";

  for (double t : ax.ticks()) {
    const double px = ax.map(t, x0, x1);
    out += "<line x1=\"" + num(px) + "\" y1=\"" + num(y0) + "\" x2=\"" +
           num(px) + "\" y2=\"" + num(y1) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + num(px) + "\" y=\"" + num(y0 + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">" + num(t) + "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double py = ay.map(t, y0, y1);
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(py) + "\" x2=\"" +
           num(x1) + "\" y2=\"" + num(py) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(py + 4) +
           "\" font-size=\"11\" text-anchor=\"end\" "
           "font-family=\"sans-serif\">" + num(t) + "</text>\n";
  }
  out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" +
         num(x1 - x0) + "\" height=\"" + num(y0 - y1) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  out += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" +
         num(spec.height - 12.0) +
         "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">" + spec.xlabel + "</text>\n";
  out += "<text x=\"16\" y=\"" + num((y0 + y1) / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 16 " +
         num((y0 + y1) / 2) + ")\">" + spec.ylabel + "</text>\n";

  int legend_row = 0;
  for (const auto& s : series) {
    std::string pts;
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (spec.log_x && !(s.x[i] > 0)) continue;
      if (spec.log_y && !(s.y[i] > 0)) continue;
      pts += num(ax.map(s.x[i], x0, x1)) + "," + num(ay.map(s.y[i], y0, y1)) +
             " ";
      out += "<circle cx=\"" + num(ax.map(s.x[i], x0, x1)) + "\" cy=\"" +
             num(ay.map(s.y[i], y0, y1)) + "\" r=\"2.5\" fill=\"" + s.color +
             "\"/>\n";
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
           s.color + "\" stroke-width=\"1.5\"/>\n";
    if (!s.label.empty()) {
      const double ly = y1 + 16 + 16 * legend_row++;
      out += "<line x1=\"" + num(x1 - 130) + "\" y1=\"" + num(ly - 4) +
             "\" x2=\"" + num(x1 - 110) + "\" y2=\"" + num(ly - 4) +
             "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
      out += "<text x=\"" + num(x1 - 104) + "\" y=\"" + num(ly) +
             "\" font-size=\"11\" font-family=\"sans-serif\">" + s.label +
             "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

void write_line_plot(const std::string& path, const PlotSpec& spec,
                     const std::vector<PlotSeries>& series) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << render_line_plot(spec, series);
}

} // namespace dnlslab
