#include "epgram/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace epgram {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* kLinePalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                              "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

// Monotone dark-to-light anchors (inferno-like); interpolated linearly.
struct Anchor { double t; int r, g, b; };
const Anchor kHeatAnchor[] = {
    {0.00, 0, 0, 4},     {0.25, 87, 16, 110},  {0.50, 188, 55, 84},
    {0.75, 249, 142, 9}, {1.00, 252, 255, 164}};

std::string heat_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const Anchor* lo = &kHeatAnchor[0];
  const Anchor* hi = &kHeatAnchor[4];
  for (int i = 0; i < 4; ++i) {
    if (t >= kHeatAnchor[i].t && t <= kHeatAnchor[i + 1].t) {
      lo = &kHeatAnchor[i];
      hi = &kHeatAnchor[i + 1];
      break;
    }
  }
  double u = (hi->t > lo->t) ? (t - lo->t) / (hi->t - lo->t) : 0.0;
  int r = static_cast<int>(std::lround(lo->r + u * (hi->r - lo->r)));
  int g = static_cast<int>(std::lround(lo->g + u * (hi->g - lo->g)));
  int b = static_cast<int>(std::lround(lo->b + u * (hi->b - lo->b)));
  char buf[10];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

struct Frame {
  double x0, y0, x1, y1;  // plot area in svg coordinates (y grows downward)
};

void open_svg(std::string& svg, const PlotOptions& o) {
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(o.width) + "\" height=\"" + std::to_string(o.height) +
         "\" viewBox=\"0 0 " + std::to_string(o.width) + " " +
         std::to_string(o.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!o.title.empty()) {
    svg += "<text x=\"12\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" +
           o.title + "</text>\n";
  }
}

void axes(std::string& svg, const Frame& fr, double fx0, double fx1,
          double fy0, double fy1, const std::string& ylab) {
  svg += "<rect x=\"" + num(fr.x0) + "\" y=\"" + num(fr.y0) + "\" width=\"" +
         num(fr.x1 - fr.x0) + "\" height=\"" + num(fr.y1 - fr.y0) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double t = i / 5.0;
    double px = fr.x0 + t * (fr.x1 - fr.x0);
    double py = fr.y1 - t * (fr.y1 - fr.y0);
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(fr.y1) + "\" x2=\"" +
           num(px) + "\" y2=\"" + num(fr.y1 + 4) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + num(px) + "\" y=\"" + num(fr.y1 + 18) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
           num(fx0 + t * (fx1 - fx0)) + "</text>\n";
    svg += "<line x1=\"" + num(fr.x0 - 4) + "\" y1=\"" + num(py) + "\" x2=\"" +
           num(fr.x0) + "\" y2=\"" + num(py) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + num(fr.x0 - 8) + "\" y=\"" + num(py + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
           num(fy0 + t * (fy1 - fy0)) + "</text>\n";
  }
  double xm = 0.5 * (fr.x0 + fr.x1);
  svg += "<text x=\"" + num(xm) + "\" y=\"" + num(fr.y1 + 36) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
         "f (cycles per unit time)</text>\n";
  double ym = 0.5 * (fr.y0 + fr.y1);
  svg += "<text x=\"16\" y=\"" + num(ym) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
         " transform=\"rotate(-90 16 " + num(ym) + ")\">" + ylab + "</text>\n";
}

std::vector<std::size_t> select_rows(const PeriodogramMatrix& pm,
                                     const PlotOptions& opts) {
  std::vector<std::size_t> rows;
  if (opts.levels.empty()) {
    for (std::size_t i = 0; i < pm.level_count(); ++i) rows.push_back(i);
    return rows;
  }
  for (double want : opts.levels) {
    bool found = false;
    for (std::size_t i = 0; i < pm.level_count(); ++i) {
      if (std::abs(pm.levels[i] - want) <= 1e-9) {
        rows.push_back(i);
        found = true;
        break;
      }
    }
    if (!found) {
      throw ConfigError("level " + std::to_string(want) +
                        " is not present in the matrix");
    }
  }
  return rows;
}

}  // namespace

std::string render_line_svg(const PeriodogramMatrix& pm,
                            const PlotOptions& opts) {
  const auto rows = select_rows(pm, opts);
  const std::size_t k = pm.freq_count();
  if (k == 0) throw InputError("empty matrix");

  double vmax = 0.0;
  for (std::size_t r : rows) {
    for (double v : pm.rows[r]) vmax = std::max(vmax, v);
  }
  if (vmax <= 0.0) vmax = 1.0;
  vmax *= 1.05;

  const double f0 = 0.0;
  const double f1 = static_cast<double>(pm.grid.indices.back()) / pm.grid.n;

  std::string svg;
  open_svg(svg, opts);
  Frame fr{70, 36, opts.width - 20.0, opts.height - 46.0};
  axes(svg, fr, f0, f1, 0.0, vmax, "ordinate");

  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    const auto& row = pm.rows[rows[ri]];
    const char* color = kLinePalette[ri % 8];
    std::string pts;
    for (std::size_t f = 0; f < k; ++f) {
      double fx = static_cast<double>(pm.grid.indices[f]) / pm.grid.n;
      double px = fr.x0 + (fx - f0) / (f1 - f0) * (fr.x1 - fr.x0);
      double py = fr.y1 - row[f] / vmax * (fr.y1 - fr.y0);
      pts += num(px) + "," + num(py) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.3\" points=\"" + pts + "\"/>\n";
    svg += "<text x=\"" + num(fr.x1 - 8) + "\" y=\"" +
           num(fr.y0 + 16 + 14.0 * ri) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\""
           " fill=\"" + color + "\">level " + num(pm.levels[rows[ri]]) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_heatmap_svg(const PeriodogramMatrix& pm,
                               const PlotOptions& opts) {
  const std::size_t k = pm.freq_count();
  const std::size_t l = pm.level_count();
  if (k == 0 || l == 0) throw InputError("empty matrix");

  double vmin = pm.rows[0][0], vmax = pm.rows[0][0];
  for (const auto& row : pm.rows) {
    for (double v : row) {
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  }
  const double span = vmax - vmin;

  std::string svg;
  open_svg(svg, opts);
  Frame fr{70, 36, opts.width - 20.0, opts.height - 46.0};
  const double cw = (fr.x1 - fr.x0) / k;
  const double ch = (fr.y1 - fr.y0) / l;
  for (std::size_t li = 0; li < l; ++li) {
    for (std::size_t f = 0; f < k; ++f) {
      double t = span > 0.0 ? (pm.rows[li][f] - vmin) / span : 0.0;
      double px = fr.x0 + f * cw;
      // low levels at the bottom
      double py = fr.y1 - (li + 1) * ch;
      svg += "<rect x=\"" + num(px) + "\" y=\"" + num(py) + "\" width=\"" +
             num(cw + 0.5) + "\" height=\"" + num(ch + 0.5) + "\" fill=\"" +
             heat_color(t) + "\"/>\n";
    }
  }
  const double f1 = static_cast<double>(pm.grid.indices.back()) / pm.grid.n;
  axes(svg, fr, 0.0, f1, pm.levels.front(), pm.levels.back(), "level");
  svg += "</svg>\n";
  return svg;
}

std::string line_plot_data_csv(const PeriodogramMatrix& pm,
                               const PlotOptions& opts) {
  const auto rows = select_rows(pm, opts);
  std::string out = "f";
  for (std::size_t r : rows) out += ",level_" + num(pm.levels[r]);
  out += '\n';
  for (std::size_t f = 0; f < pm.freq_count(); ++f) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g",
                  static_cast<double>(pm.grid.indices[f]) / pm.grid.n);
    out += buf;
    for (std::size_t r : rows) {
      std::snprintf(buf, sizeof(buf), ",%.17g", pm.rows[r][f]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace epgram
