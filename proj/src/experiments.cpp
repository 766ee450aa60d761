#include "padeclust/experiments.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "experiments_internal.hpp"
#include "padeclust/errors.hpp"

namespace padeclust {

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw MissingData("no column '" + name + "'");
}

std::vector<double> Table::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_number(r[i]);
    out << '\n';
  }
}

Table Table::read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  Table t;
  std::string line;
  if (!std::getline(in, line) || line.empty()) throw MissingData("empty CSV");
  t.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.columns.size()) throw MissingData("ragged CSV row");
    std::vector<double> row;
    for (const auto& c : cells) {
      if (c == "nan") {
        row.push_back(detail::kNaN);
      } else if (c == "inf" || c == "-inf") {
        row.push_back(c[0] == '-' ? -HUGE_VAL : HUGE_VAL);
      } else {
        double v = 0.0;
        const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
        if (res.ec != std::errc() || res.ptr != c.data() + c.size()) {
          throw MissingData("non-numeric CSV cell '" + c + "'");
        }
        row.push_back(v);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

double median(std::vector<double> v) {
  if (v.empty()) return detail::kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::array<double, 3> affine_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2 || x.size() != y.size()) return {detail::kNaN, detail::kNaN, detail::kNaN};
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return {my, detail::kNaN, detail::kNaN};
  const double b = sxy / sxx;
  const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {my - b * mx, b, r2};
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

PadeInvariants check_pade_invariants(std::span<const double> coeffs, const PadePair& pair,
                                     const ReportOptions& options, Precision precision) {
  PadeInvariants inv;
  const ToeplitzTriple<double> triple = build_triple<double>(coeffs, pair.m, pair.n);
  inv.chain = et_bound_chain(coeffs, triple, pair);
  inv.chain_holds =
      inv.chain.l1_inequality_holds() && inv.chain.bounds_hold() && inv.chain.monotone();
  const RootSet roots = find_roots(pair.p, RootOptions{1e-10, 1000, precision});
  inv.report = clustering_report(pair.p, roots, options);
  return inv;
}

RunResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  switch (config.name) {
    case ExperimentName::kEtClustering:
      return run_et_clustering(config);
    case ExperimentName::kDiscreteExample:
      return run_discrete_example(config);
    case ExperimentName::kToeplitzAnticoncentration:
      return run_toeplitz_anticoncentration(config);
    case ExperimentName::kDetGrowth:
      return run_det_growth(config);
    case ExperimentName::kZeroRadius:
      return run_zero_radius(config);
    case ExperimentName::kPoleClustering:
      return run_pole_clustering(config);
  }
  throw ConfigError("unknown experiment");
}

namespace detail {

nlohmann::json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::json base_summary(const ExperimentConfig& config, const Table& table,
                            std::size_t units, double wall_seconds,
                            std::size_t invariant_violations) {
  auto count = [&](const char* name) -> std::size_t {
    if (std::find(table.columns.begin(), table.columns.end(), name) == table.columns.end()) {
      return 0;
    }
    std::size_t c = 0;
    for (double v : table.values(name)) c += v != 0.0 ? 1 : 0;
    return c;
  };
  nlohmann::json s;
  s["schema_version"] = kSummarySchemaVersion;
  s["experiment"] = experiment_name(config.name);
  s["distribution"] = kind_name(config.spec.kind);
  s["seed"] = config.seed;
  s["trials"] = units;
  s["trials_per_cell"] = config.trials;
  s["rows"] = table.rows.size();
  s["degenerate"] = count("degenerate");
  s["excluded"] = count("excluded");
  s["invariant_violations"] = invariant_violations;
  s["stated_radial_bound_violations"] = [&]() -> std::size_t {
    if (std::find(table.columns.begin(), table.columns.end(), "radial_stated_ok") ==
        table.columns.end()) {
      return 0;
    }
    std::size_t c = 0;
    for (double v : table.values("radial_stated_ok")) c += v == 0.0 ? 1 : 0;
    return c;
  }();
  s["wall_time_seconds"] = wall_seconds;
  s["note"] = kConstantsNote;
  return s;
}

std::vector<double> clean_values(const Table& table, const std::string& column,
                                 const Filter& where) {
  const std::size_t c = table.column(column);
  std::vector<std::size_t> keys;
  for (const auto& w : where) keys.push_back(table.column(w.first));
  auto optional = [&](const char* name) -> std::ptrdiff_t {
    const auto it = std::find(table.columns.begin(), table.columns.end(), name);
    return it == table.columns.end() ? -1 : it - table.columns.begin();
  };
  const auto deg = optional("degenerate");
  const auto exc = optional("excluded");
  std::vector<double> out;
  for (const auto& r : table.rows) {
    bool keep = true;
    for (std::size_t k = 0; k < keys.size(); ++k) keep = keep && r[keys[k]] == where[k].second;
    if (deg >= 0) keep = keep && r[static_cast<std::size_t>(deg)] == 0.0;
    if (exc >= 0) keep = keep && r[static_cast<std::size_t>(exc)] == 0.0;
    if (keep && !std::isnan(r[c])) out.push_back(r[c]);
  }
  return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

bool non_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] <= v[i - 1])) return false;
  }
  return true;
}

}  // namespace detail

}  // namespace padeclust
