#include "padeclust/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "experiments_internal.hpp"
#include "padeclust/errors.hpp"
#include "padeclust/experiments.hpp"

namespace padeclust {

namespace {

namespace fs = std::filesystem;

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

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

std::ostringstream svg_stream() {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::fixed << std::setprecision(2);
  return out;
}

std::string tick_label(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(3) << v;
  return s.str();
}

void header(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"15\">" << escape(title) << "</text>\n";
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range padded(double lo, double hi) {
  if (!(lo <= hi)) return {0.0, 1.0};
  if (lo == hi) {
    const double d = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
    return {lo - d, hi + d};
  }
  const double d = 0.05 * (hi - lo);
  return {lo - d, hi + d};
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw MissingData("cannot write " + path.string());
  f << content;
}

Table load_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingData("cannot read " + path.string());
  return Table::read_csv(in);
}

std::vector<double> distinct(const Table& t, const std::string& column) {
  std::set<double> s;
  for (double v : t.values(column)) {
    if (!std::isnan(v)) s.insert(v);
  }
  return {s.begin(), s.end()};
}

// One series per value of `group`, median of `metric` at each value of `x`.
LineChart median_chart(const Table& t, const std::string& x, const std::string& group,
                       const std::string& metric) {
  LineChart chart{"median " + metric + " vs " + x, x, metric, {}};
  for (double g : distinct(t, group)) {
    Series s{group + "=" + format_number(g), {}, {}};
    for (double xv : distinct(t, x)) {
      s.x.push_back(xv);
      s.y.push_back(median(detail::clean_values(t, metric, {{x, xv}, {group, g}})));
    }
    chart.series.push_back(std::move(s));
  }
  return chart;
}

std::vector<std::string> columns_with_prefix(const Table& t, const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& c : t.columns) {
    if (c.rfind(prefix, 0) == 0) out.push_back(c);
  }
  return out;
}

double suffix_value(const std::string& column, const std::string& prefix) {
  return std::stod(column.substr(prefix.size()));
}

// Median of each prefixed column against the number in its name.
LineChart suffix_chart(const Table& t, const std::string& prefix, const std::string& title,
                       const std::string& x_label, const std::string& y_label) {
  Series s{"median", {}, {}};
  for (const auto& c : columns_with_prefix(t, prefix)) {
    s.x.push_back(suffix_value(c, prefix));
    s.y.push_back(median(detail::clean_values(t, c, {})));
  }
  return LineChart{title, x_label, y_label, {s}};
}

std::vector<std::pair<std::string, LineChart>> experiment_charts(const std::string& experiment,
                                                                 const Table& t,
                                                                 const nlohmann::json& summary) {
  std::vector<std::pair<std::string, LineChart>> charts;
  auto add_median = [&](const std::string& x, const std::string& group, const std::string& metric) {
    charts.emplace_back(metric + "_vs_" + x, median_chart(t, x, group, metric));
  };
  if (experiment == "et-clustering" || experiment == "discrete-example") {
    for (const char* metric : {"et_log_over_m", "sector_discrepancy", "bl_upper", "bl_lower"}) {
      add_median("m", "n", metric);
    }
    for (const auto& c : columns_with_prefix(t, "radial_defect_")) add_median("m", "n", c);
  } else if (experiment == "det-growth") {
    add_median("m", "n", "det_root_m");
    add_median("m", "n", "deviation");
  } else if (experiment == "pole-clustering") {
    add_median("n", "m", "median_abs_deviation");
    add_median("n", "m", "annulus_mass");
  } else if (experiment == "zero-radius") {
    charts.emplace_back("rate_vs_s", suffix_chart(t, "rate_", "median (1-R_s) s / log s vs s", "s",
                                                  "(1-R_s) s / log s"));
    charts.emplace_back("R_vs_s", suffix_chart(t, "R_", "median R_s vs s", "s", "R_s"));
    charts.emplace_back("ratio_vs_r",
                        suffix_chart(t, "ratio_", "median zero-counting ratio vs r", "r", "ratio"));
  } else if (experiment == "toeplitz-anticoncentration") {
    if (!summary.contains("cells")) throw MissingData("summary.json has no cells");
    LineChart chart{"P(|det A|^(1/n) < eps) vs eps", "eps", "probability", {}};
    std::map<double, Series> by_n;
    for (const auto& cell : summary["cells"]) {
      const double n = cell["n"].get<double>();
      auto& s = by_n[n];
      s.label = "n=" + format_number(n);
      s.x.push_back(cell["epsilon"].get<double>());
      s.y.push_back(cell["probability"].get<double>());
    }
    for (auto& [n, s] : by_n) chart.series.push_back(std::move(s));
    charts.emplace_back("probability_vs_epsilon", std::move(chart));
  } else {
    throw MissingData("summary.json names unknown experiment '" + experiment + "'");
  }
  return charts;
}

}  // namespace

std::string render_line_chart(const LineChart& chart) {
  double xlo = HUGE_VAL, xhi = -HUGE_VAL, ylo = HUGE_VAL, yhi = -HUGE_VAL;
  for (const auto& s : chart.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  const Range xr = padded(xlo, xhi);
  const Range yr = padded(ylo, yhi);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  auto out = svg_stream();
  header(out, chart.title);
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / 4.0;
    out << "<line x1=\"" << px(xv) << "\" y1=\"" << kTop + ph << "\" x2=\"" << px(xv) << "\" y2=\""
        << kTop + ph + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px(xv) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
        << tick_label(xv) << "</text>\n"
        << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << kLeft << "\" y2=\""
        << py(yv) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
        << tick_label(yv) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + ph / 2 << ")\">" << escape(chart.y_label) << "</text>\n";

  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const auto& s = chart.series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    out << "<polyline class=\"series\" fill=\"none\" stroke=\"" << colour
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\""
          << colour << "\"/>\n";
    }
    const double ly = kTop + 10 + 16.0 * static_cast<double>(k);
    out << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 30
        << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kLeft + pw + 35 << "\" y=\"" << ly + 4 << "\">" << escape(s.label)
        << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string render_root_scatter(std::span<const Complex> roots, const std::string& title) {
  double extent = 1.0;
  for (const auto& z : roots) {
    if (std::isfinite(std::abs(z))) extent = std::max({extent, std::abs(z.real()), std::abs(z.imag())});
  }
  extent *= 1.1;
  const double side = kHeight - kTop - 20.0;
  const double cx = kWidth / 2.0;
  const double cy = kTop + side / 2.0;
  const double scale = side / (2.0 * extent);

  auto out = svg_stream();
  header(out, title);
  out << "<line x1=\"" << cx - side / 2 << "\" y1=\"" << cy << "\" x2=\"" << cx + side / 2
      << "\" y2=\"" << cy << "\" stroke=\"#bbbbbb\"/>\n"
      << "<line x1=\"" << cx << "\" y1=\"" << cy - side / 2 << "\" x2=\"" << cx << "\" y2=\""
      << cy + side / 2 << "\" stroke=\"#bbbbbb\"/>\n"
      << "<circle class=\"unit-circle\" cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << scale
      << "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& z : roots) {
    out << "<circle class=\"root\" cx=\"" << cx + scale * z.real() << "\" cy=\""
        << cy - scale * z.imag() << "\" r=\"2.5\" fill=\"#d62728\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<fs::path> plot_run_directory(const fs::path& dir, const fs::path& out_dir) {
  if (!fs::is_directory(dir)) throw MissingData("not a directory: " + dir.string());
  std::vector<fs::path> written;
  const bool has_roots = fs::exists(dir / "roots.csv");
  const bool has_trials = fs::exists(dir / "trials.csv");
  if (!has_roots && !has_trials) {
    throw MissingData("no roots.csv or trials.csv in " + dir.string());
  }
  fs::create_directories(out_dir);

  if (has_roots) {
    const Table t = load_table(dir / "roots.csv");
    const auto re = t.values("re");
    const auto im = t.values("im");
    std::vector<Complex> z;
    for (std::size_t i = 0; i < re.size(); ++i) z.emplace_back(re[i], im[i]);
    const fs::path path = out_dir / "roots_scatter.svg";
    write_file(path, render_root_scatter(z, std::to_string(z.size()) + " roots"));
    written.push_back(path);
  }

  if (has_trials) {
    std::ifstream in(dir / "summary.json");
    if (!in) throw MissingData("trials.csv without summary.json in " + dir.string());
    nlohmann::json summary;
    try {
      summary = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw MissingData(std::string("summary.json: ") + e.what());
    }
    if (!summary.contains("experiment")) throw MissingData("summary.json has no experiment name");
    const Table t = load_table(dir / "trials.csv");
    if (t.rows.empty()) throw MissingData("trials.csv has no rows");
    for (const auto& [name, chart] :
         experiment_charts(summary["experiment"].get<std::string>(), t, summary)) {
      const fs::path path = out_dir / (name + ".svg");
      write_file(path, render_line_chart(chart));
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace padeclust
