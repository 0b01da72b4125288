#pragma once

#include <string>
#include <vector>

#include "epgram/types.hpp"

namespace epgram {

struct PlotOptions {
  int width = 880;
  int height = 540;
  std::string title;
  // For line plots: subset of levels to overlay (empty = all rows).
  std::vector<double> levels;
};

/// Self-contained SVG line plot of periodogram rows against f = nu/n.
std::string render_line_svg(const PeriodogramMatrix& pm,
                            const PlotOptions& opts = {});

/// Heatmap of (frequency, level) -> ordinate. Colors follow a monotone
/// dark-to-light scale (linear interpolation through fixed anchors), so
/// larger ordinates are always lighter.
std::string render_heatmap_svg(const PeriodogramMatrix& pm,
                               const PlotOptions& opts = {});

/// Companion plot-data CSV for a line plot: f column plus one column per
/// plotted level.
std::string line_plot_data_csv(const PeriodogramMatrix& pm,
                               const PlotOptions& opts = {});

}  // namespace epgram
