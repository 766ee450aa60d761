#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "padeclust/poly.hpp"

namespace padeclust {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // NaN points are skipped
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Static SVG line chart with axes, ticks and a legend.
std::string render_line_chart(const LineChart& chart);

/// Static SVG scatter of points in the plane with the unit circle overlaid.
/// Each point is one <circle class="root"> element.
std::string render_root_scatter(std::span<const Complex> roots, const std::string& title);

/// Renders every chart the run directory supports into out_dir:
///   roots.csv             -> roots_scatter.svg
///   trials.csv + summary  -> one chart per metric of the recorded experiment
/// Returns the written paths. Throws MissingData when the directory holds neither.
std::vector<std::filesystem::path> plot_run_directory(const std::filesystem::path& dir,
                                                      const std::filesystem::path& out_dir);

}  // namespace padeclust
