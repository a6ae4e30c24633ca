#include "phnet/io/svg.hpp"

#include "phnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace phnet::io {

namespace {

constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 34.0;
constexpr double kBottom = 44.0;
constexpr Eigen::Index kMaxCells = 120;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
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

  Range padded() const {
    Range r = *this;
    if (!(r.lo <= r.hi)) return {0.0, 1.0};
    if (r.hi - r.lo < 1e-12 * std::max(1.0, std::abs(r.hi))) {
      const double pad = std::max(0.5, 0.05 * std::abs(r.hi));
      return {r.lo - pad, r.hi + pad};
    }
    const double pad = 0.05 * (r.hi - r.lo);
    return {r.lo - pad, r.hi + pad};
  }
};

struct Frame {
  double x0, y0, w, h;
  Range xr, yr;

  double sx(double x) const { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * w; }
  double sy(double y) const { return y0 + h - (y - yr.lo) / (yr.hi - yr.lo) * h; }
};

void axes(std::string& out, const Frame& f, const std::string& title, const std::string& xl, const std::string& yl) {
  out += "<rect x=\"" + px(f.x0) + "\" y=\"" + px(f.y0) + "\" width=\"" + px(f.w) + "\" height=\"" + px(f.h) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.xr.lo + (f.xr.hi - f.xr.lo) * i / 4.0;
    const double yv = f.yr.lo + (f.yr.hi - f.yr.lo) * i / 4.0;
    const double xp = f.sx(xv), yp = f.sy(yv);
    out += "<line x1=\"" + px(xp) + "\" y1=\"" + px(f.y0 + f.h) + "\" x2=\"" + px(xp) + "\" y2=\"" +
           px(f.y0 + f.h + 5) + "\" stroke=\"#333333\"/>\n";
    out += "<text x=\"" + px(xp) + "\" y=\"" + px(f.y0 + f.h + 18) + "\" text-anchor=\"middle\">" +
           fmt("%.4g", xv) + "</text>\n";
    out += "<line x1=\"" + px(f.x0 - 5) + "\" y1=\"" + px(yp) + "\" x2=\"" + px(f.x0) + "\" y2=\"" + px(yp) +
           "\" stroke=\"#333333\"/>\n";
    out += "<text x=\"" + px(f.x0 - 8) + "\" y=\"" + px(yp + 4) + "\" text-anchor=\"end\">" + fmt("%.4g", yv) +
           "</text>\n";
  }
  out += "<text x=\"" + px(f.x0 + f.w / 2) + "\" y=\"" + px(f.y0 - 10) + "\" text-anchor=\"middle\" font-weight=\"bold\">" +
         escape(title) + "</text>\n";
  out += "<text x=\"" + px(f.x0 + f.w / 2) + "\" y=\"" + px(f.y0 + f.h + 36) + "\" text-anchor=\"middle\">" +
         escape(xl) + "</text>\n";
  out += "<text transform=\"translate(" + px(f.x0 - 52) + "," + px(f.y0 + f.h / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(yl) + "</text>\n";
}

void line_panel(std::string& out, const LinePanel& p, double top, double width, double height) {
  Frame f{kLeft, top + kTop, width - kLeft - kRight, height - kTop - kBottom, {}, {}};
  for (const auto& s : p.series) {
    for (double x : s.x) f.xr.add(x);
    for (double y : s.y) f.yr.add(y);
  }
  if (p.reference) f.yr.add(*p.reference);
  f.xr = f.xr.padded();
  f.yr = f.yr.padded();
  axes(out, f, p.title, p.x_label, p.y_label);

  if (p.reference) {
    const double y = f.sy(*p.reference);
    out += "<line x1=\"" + px(f.x0) + "\" y1=\"" + px(y) + "\" x2=\"" + px(f.x0 + f.w) + "\" y2=\"" + px(y) +
           "\" stroke=\"#000000\" stroke-dasharray=\"8,4\" stroke-width=\"1\"/>\n";
    if (!p.reference_label.empty()) {
      out += "<text x=\"" + px(f.x0 + 6) + "\" y=\"" + px(y - 5) + "\">" + escape(p.reference_label) + "</text>\n";
    }
  }

  double legend_y = f.y0 + 14;
  for (const auto& s : p.series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    std::string points;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!points.empty()) points += ' ';
      points += px(f.sx(s.x[i])) + "," + px(f.sy(s.y[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? std::string(" stroke-dasharray=\"5,3\"") : std::string()) + " points=\"" + points + "\"/>\n";
    if (s.markers || n == 1) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        out += "<circle cx=\"" + px(f.sx(s.x[i])) + "\" cy=\"" + px(f.sy(s.y[i])) + "\" r=\"2\" fill=\"" + s.color +
               "\"/>\n";
      }
    }
    const double lx = f.x0 + f.w - 150;
    out += "<line x1=\"" + px(lx) + "\" y1=\"" + px(legend_y - 4) + "\" x2=\"" + px(lx + 24) + "\" y2=\"" +
           px(legend_y - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? std::string(" stroke-dasharray=\"5,3\"") : std::string()) + "/>\n";
    out += "<text x=\"" + px(lx + 30) + "\" y=\"" + px(legend_y) + "\">" + escape(s.label) + "</text>\n";
    legend_y += 15;
  }
}

std::string shade(double v) {
  // white -> dark blue
  const double c = std::clamp(v, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 - 235 * c));
  const int g = static_cast<int>(std::lround(255 - 205 * c));
  const int b = static_cast<int>(std::lround(255 - 115 * c));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

void heatmap_panel(std::string& out, const HeatmapPanel& p, double top, double width, double height) {
  Frame f{kLeft, top + kTop, width - kLeft - kRight, height - kTop - kBottom, {}, {}};
  f.xr = p.x_max > p.x_min ? Range{p.x_min, p.x_max} : Range{p.x_min, p.x_max}.padded();
  f.yr = p.y_max > p.y_min ? Range{p.y_min, p.y_max} : Range{p.y_min, p.y_max}.padded();

  const Eigen::Index rows = p.values.rows(), cols = p.values.cols();
  const Eigen::Index br = std::min(rows, kMaxCells), bc = std::min(cols, kMaxCells);
  Eigen::MatrixXd binned = Eigen::MatrixXd::Zero(br, bc);
  Eigen::MatrixXd count = Eigen::MatrixXd::Zero(br, bc);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      binned(r * br / rows, c * bc / cols) += p.values(r, c);
      count(r * br / rows, c * bc / cols) += 1.0;
    }
  }
  binned = binned.cwiseQuotient(count);
  const double peak = binned.maxCoeff() > 0.0 ? binned.maxCoeff() : 1.0;
  const double cw = f.w / static_cast<double>(bc), ch = f.h / static_cast<double>(br);
  for (Eigen::Index r = 0; r < br; ++r) {
    for (Eigen::Index c = 0; c < bc; ++c) {
      out += "<rect x=\"" + px(f.x0 + c * cw) + "\" y=\"" + px(f.y0 + f.h - (r + 1) * ch) + "\" width=\"" +
             px(cw + 0.05) + "\" height=\"" + px(ch + 0.05) + "\" fill=\"" + shade(binned(r, c) / peak) + "\"/>\n";
    }
  }
  axes(out, f, p.title, p.x_label, p.y_label);
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  bool any = false;
  for (const auto& p : spec.lines) {
    for (const auto& s : p.series) any = any || (!s.x.empty() && !s.y.empty());
  }
  for (const auto& h : spec.heatmaps) any = any || h.values.size() > 0;
  if (!any) throw Error(ErrorKind::EmptyData, "nothing to plot");

  const double header = spec.title.empty() ? 0.0 : 28.0;
  const auto drawn_heatmaps = std::count_if(spec.heatmaps.begin(), spec.heatmaps.end(),
                                            [](const HeatmapPanel& h) { return h.values.size() > 0; });
  const auto panels = static_cast<double>(spec.lines.size()) + static_cast<double>(drawn_heatmaps);
  const double height = header + panels * spec.panel_height;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(spec.width) + "\" height=\"" + px(height) +
         "\" viewBox=\"0 0 " + px(spec.width) + " " + px(height) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  if (!spec.title.empty()) {
    out += "<text x=\"" + px(spec.width / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(spec.title) + "</text>\n";
  }
  double top = header;
  for (const auto& p : spec.lines) {
    line_panel(out, p, top, spec.width, spec.panel_height);
    top += spec.panel_height;
  }
  for (const auto& h : spec.heatmaps) {
    if (h.values.size() == 0) continue;
    heatmap_panel(out, h, top, spec.width, spec.panel_height);
    top += spec.panel_height;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace phnet::io
