#include <cmath>

#include "experiments_internal.hpp"
#include "padeclust/errors.hpp"
#include "padeclust/sampler.hpp"

namespace padeclust {

namespace {

using detail::kNaN;

struct Cell {
  std::size_t m;
  std::size_t n;
};

std::vector<Cell> cells_of(const ExperimentConfig& c) {
  std::vector<Cell> cells;
  for (auto n : c.n) {
    for (auto m : c.m) cells.push_back({m, n});
  }
  return cells;
}

std::vector<std::string> pade_columns(const ExperimentConfig& c) {
  std::vector<std::string> cols{"trial_index", "m", "n", "degenerate", "excluded", "extended",
                                "order_residual", "logdet_denominator", "condition", "et_log",
                                "et_log_over_m"};
  for (double rho : c.rho) cols.push_back("radial_defect_" + format_number(rho));
  for (const char* name : {"sector_discrepancy", "sector_bound", "bl_upper", "bl_lower",
                           "log_l1_bound", "log_cauchy_binet_bound", "log_amgm_bound",
                           "radial_stated_ok", "invariants_ok"}) {
    cols.emplace_back(name);
  }
  return cols;
}

std::vector<double> pade_row(const ExperimentConfig& c, const Cell& cell, std::size_t index) {
  const std::size_t length = c.N == 0 ? cell.m + cell.n : c.N;
  const auto a = sample(c.spec, length, c.seed, index).coeffs;

  std::vector<double> row(pade_columns(c).size(), kNaN);
  std::size_t k = 0;
  row[k++] = static_cast<double>(index);
  row[k++] = static_cast<double>(cell.m);
  row[k++] = static_cast<double>(cell.n);
  double& degenerate = row[k++];
  double& excluded = row[k++];
  double& extended = row[k++];
  degenerate = 0.0;
  excluded = 0.0;
  extended = 0.0;

  PadePair pair;
  try {
    pair = pade(a, cell.m, cell.n, PadeOptions{c.precision});
  } catch (const DegenerateSystem&) {
    degenerate = 1.0;
    return row;
  }
  extended = pair.diagnostics.precision_used == Precision::kExtended ? 1.0 : 0.0;
  row[k++] = pair.diagnostics.order_residual;
  row[k++] = pair.diagnostics.logdet_denominator;
  row[k++] = pair.diagnostics.condition;

  PadeInvariants inv;
  try {
    inv = check_pade_invariants(a, pair, ReportOptions{c.rho, c.grid_size, c.family_size},
                                c.precision);
  } catch (const Error&) {
    // vanishing end coefficient, singular A^(n+1) or root-finder failure
    excluded = 1.0;
    return row;
  }
  const auto& rep = inv.report;
  row[k++] = rep.et_log;
  row[k++] = rep.et_log / static_cast<double>(cell.m);
  for (double d : rep.radial_defect) row[k++] = d;
  row[k++] = rep.max_sector_discrepancy;
  row[k++] = rep.sector_bound;
  row[k++] = rep.bl_upper;
  row[k++] = rep.bl_lower_estimate;
  row[k++] = inv.chain.log_l1_bound;
  row[k++] = inv.chain.log_cauchy_binet_bound;
  row[k++] = inv.chain.log_amgm_bound;
  row[k++] = rep.radial_holds ? 1.0 : 0.0;
  row[k++] = inv.proven_hold() ? 1.0 : 0.0;
  return row;
}

struct PadeRun {
  Table table;
  std::vector<Cell> cells;
  std::size_t violations = 0;
  double seconds = 0.0;
};

PadeRun run_pade_trials(const ExperimentConfig& c) {
  detail::Stopwatch clock;
  PadeRun run;
  run.cells = cells_of(c);
  run.table.columns = pade_columns(c);
  const std::size_t units = run.cells.size() * c.trials;
  run.table.rows.resize(units);
  parallel_for(units, c.threads, [&](std::size_t i) {
    run.table.rows[i] = pade_row(c, run.cells[i / c.trials], i);
  });
  const std::size_t ok = run.table.column("invariants_ok");
  for (const auto& r : run.table.rows) run.violations += r[ok] == 0.0 ? 1 : 0;
  run.seconds = clock.seconds();
  return run;
}

nlohmann::json cell_summaries(const ExperimentConfig& c, const PadeRun& run) {
  const double threshold = std::pow(c.delta, 4.0);
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : run.cells) {
    const detail::Filter where{{"m", double(cell.m)}, {"n", double(cell.n)}};
    const auto ratio = detail::clean_values(run.table, "et_log_over_m", where);
    std::size_t above = 0;
    for (double v : ratio) above += v > threshold ? 1 : 0;
    std::size_t degenerate = 0;
    const auto deg = run.table.column("degenerate");
    const auto mcol = run.table.column("m");
    const auto ncol = run.table.column("n");
    for (const auto& r : run.table.rows) {
      if (r[mcol] == double(cell.m) && r[ncol] == double(cell.n) && r[deg] != 0.0) ++degenerate;
    }
    cells.push_back({
        {"m", cell.m},
        {"n", cell.n},
        {"trials", c.trials},
        {"degenerate", degenerate},
        {"used", ratio.size()},
        {"median_et_log_over_m", detail::number_or_null(median(ratio))},
        {"fraction_et_log_over_m_above_delta4",
         ratio.empty() ? nlohmann::json(nullptr) : nlohmann::json(double(above) / double(ratio.size()))},
        {"median_sector_discrepancy",
         detail::number_or_null(median(detail::clean_values(run.table, "sector_discrepancy", where)))},
        {"median_bl_upper",
         detail::number_or_null(median(detail::clean_values(run.table, "bl_upper", where)))},
        {"median_bl_lower",
         detail::number_or_null(median(detail::clean_values(run.table, "bl_lower", where)))},
    });
  }
  return cells;
}

// Per n: medians over the m schedule and whether they strictly decrease.
nlohmann::json trend(const ExperimentConfig& c, const PadeRun& run) {
  nlohmann::json out = nlohmann::json::array();
  for (auto n : c.n) {
    std::vector<double> medians;
    for (auto m : c.m) {
      medians.push_back(
          median(detail::clean_values(run.table, "et_log_over_m", {{"m", double(m)}, {"n", double(n)}})));
    }
    out.push_back({{"n", n}, {"m", c.m}, {"median_et_log_over_m", medians},
                   {"strictly_decreasing", detail::strictly_decreasing(medians)}});
  }
  return out;
}

RunResult finish(const ExperimentConfig& c, PadeRun run) {
  RunResult result;
  result.config = c;
  result.invariant_violations = run.violations;
  result.summary = detail::base_summary(c, run.table, run.table.rows.size(), run.seconds,
                                        run.violations);
  result.summary["delta"] = c.delta;
  result.summary["cells"] = cell_summaries(c, run);
  result.summary["trend"] = trend(c, run);
  result.trials = std::move(run.table);
  return result;
}

}  // namespace

RunResult run_et_clustering(const ExperimentConfig& config) {
  config.validate();
  return finish(config, run_pade_trials(config));
}

RunResult run_discrete_example(const ExperimentConfig& config) {
  config.validate();
  detail::Stopwatch clock;
  PadeRun run = run_pade_trials(config);

  // Affine model log L / m ~ a + b * n log(nM) / m over all clean trials.
  std::vector<double> x, y;
  const auto mcol = run.table.column("m");
  const auto ncol = run.table.column("n");
  const auto ycol = run.table.column("et_log_over_m");
  const auto deg = run.table.column("degenerate");
  const auto exc = run.table.column("excluded");
  const double big_m = config.spec.M;
  for (const auto& r : run.table.rows) {
    if (r[deg] != 0.0 || r[exc] != 0.0 || std::isnan(r[ycol])) continue;
    x.push_back(r[ncol] * std::log(r[ncol] * big_m) / r[mcol]);
    y.push_back(r[ycol]);
  }
  const auto fit = affine_fit(x, y);
  const double levy = empirical_levy(config.spec, 0.5, 100000, config.seed);
  run.seconds = clock.seconds();

  RunResult result = finish(config, std::move(run));
  const double rows = static_cast<double>(result.trials.rows.size());
  result.summary["degenerate_fraction"] = result.summary["degenerate"].get<double>() / rows;
  result.summary["affine_fit"] = {{"regressor", "n*log(n*M)/m"},
                                  {"intercept", detail::number_or_null(fit[0])},
                                  {"slope", detail::number_or_null(fit[1])},
                                  {"r_squared", detail::number_or_null(fit[2])},
                                  {"points", x.size()}};
  result.summary["levy_half"] = {{"empirical", levy},
                                 {"atom_mass", 1.0 / (2.0 * config.spec.M + 1.0)},
                                 {"draws", 100000}};
  return result;
}

}  // namespace padeclust
