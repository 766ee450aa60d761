#include <cmath>

#include "experiments_internal.hpp"
#include "padeclust/sampler.hpp"
#include "padeclust/toeplitz.hpp"

namespace padeclust {

namespace {

using detail::kNaN;

}  // namespace

RunResult run_toeplitz_anticoncentration(const ExperimentConfig& c) {
  c.validate();
  detail::Stopwatch clock;
  Table table;
  table.columns = {"trial_index", "n", "degenerate", "logdet", "det_root"};
  const std::size_t units = c.n.size() * c.trials;
  table.rows.resize(units);
  parallel_for(units, c.threads, [&](std::size_t i) {
    const std::size_t n = c.n[i / c.trials];
    // a_0 .. a_{2n-2}; A(i,j) = a_{n-1+i-j}
    const auto a = sample(c.spec, 2 * n - 2, c.seed, i).coeffs;
    const DetResult<double> det = log_abs_det(square_toeplitz<double>(a, n - 1, n));
    const double root = det.singular ? 0.0 : std::exp(det.log_abs / static_cast<double>(n));
    table.rows[i] = {static_cast<double>(i), static_cast<double>(n), det.singular ? 1.0 : 0.0,
                     det.log_abs, root};
  });

  RunResult result;
  result.config = c;
  result.summary = detail::base_summary(c, table, units, 0.0, 0);
  const bool independent = c.spec.kind != DistributionKind::kLogconcaveL1Ball;
  const auto ncol = table.column("n");
  const auto rcol = table.column("det_root");

  nlohmann::json cells = nlohmann::json::array();
  bool all_hold = true;
  std::vector<double> fit_x, fit_y;
  for (auto n : c.n) {
    for (double eps : c.epsilon) {
      std::size_t hits = 0;
      for (const auto& r : table.rows) {
        if (r[ncol] == double(n) && r[rcol] < eps) ++hits;
      }
      const double t = static_cast<double>(c.trials);
      const double p = static_cast<double>(hits) / t;
      const double se = std::sqrt(p * (1.0 - p) / t);
      nlohmann::json cell{{"n", n}, {"epsilon", eps}, {"probability", p}, {"standard_error", se}};
      if (independent) {
        // dimension of the sampled vector enters only for the l1 ball
        const double bound = static_cast<double>(n) * c.spec.levy_bound_K(2 * n - 2) * eps;
        const bool holds = p <= bound + 3.0 * se;
        cell["bound"] = detail::number_or_null(bound);
        cell["holds_within_3se"] = holds;
        all_hold = all_hold && holds;
      } else if (hits > 0) {
        fit_x.push_back(std::log(static_cast<double>(n)));
        fit_y.push_back(std::log(p / eps));
      }
      cells.push_back(cell);
    }
  }
  result.summary["cells"] = cells;
  if (independent) {
    result.summary["bound"] = "n*K*epsilon";
    result.summary["all_cells_hold"] = all_hold;
  } else {
    // P(|det|^(1/n) < eps) ~ C n^c eps
    const auto fit = affine_fit(fit_x, fit_y);
    result.summary["bound"] = "C*n^c*epsilon (fitted)";
    result.summary["fit"] = {{"C", detail::number_or_null(std::exp(fit[0]))},
                             {"c", detail::number_or_null(fit[1])},
                             {"r_squared", detail::number_or_null(fit[2])}};
    // finite-difference slope in epsilon at the bottom of the grid, per n
    nlohmann::json slopes = nlohmann::json::array();
    for (auto n : c.n) {
      std::vector<double> probs;
      for (const auto& cell : cells) {
        if (cell["n"] == n) probs.push_back(cell["probability"].get<double>());
      }
      const double slope = c.epsilon.size() >= 2
                               ? (probs[1] - probs[0]) / (c.epsilon[1] - c.epsilon[0])
                               : kNaN;
      slopes.push_back({{"n", n}, {"slope", detail::number_or_null(slope)}});
    }
    result.summary["small_epsilon_slope"] = slopes;
  }
  result.summary["wall_time_seconds"] = clock.seconds();
  result.trials = std::move(table);
  return result;
}

RunResult run_det_growth(const ExperimentConfig& c) {
  c.validate();
  detail::Stopwatch clock;
  const std::size_t n = c.n[0];
  std::size_t max_m = 0;
  for (auto m : c.m) max_m = std::max(max_m, m);

  Table table;
  table.columns = {"trial_index", "m", "n", "degenerate", "logdet", "det_root_m", "deviation"};
  table.rows.resize(c.trials * c.m.size());
  parallel_for(c.trials, c.threads, [&](std::size_t seed_index) {
    const auto a = sample(c.spec, max_m + n, c.seed, seed_index).coeffs;
    for (std::size_t k = 0; k < c.m.size(); ++k) {
      const std::size_t m = c.m[k];
      const DetResult<double> det = log_abs_det(square_toeplitz<double>(a, m, n));
      const double root = det.singular ? 0.0 : std::exp(det.log_abs / static_cast<double>(m));
      table.rows[seed_index * c.m.size() + k] = {
          static_cast<double>(seed_index), static_cast<double>(m), static_cast<double>(n),
          det.singular ? 1.0 : 0.0, det.log_abs, root, std::abs(root - 1.0)};
    }
  });

  RunResult result;
  result.config = c;
  result.summary = detail::base_summary(c, table, c.trials, 0.0, 0);
  std::vector<double> medians;
  bool finite_positive = true;
  for (const auto& r : table.rows) {
    finite_positive = finite_positive && std::isfinite(r[table.column("det_root_m")]) &&
                      r[table.column("det_root_m")] > 0.0;
  }
  double max_dev_last = 0.0;
  for (auto m : c.m) {
    const auto dev = detail::clean_values(table, "deviation", {{"m", double(m)}});
    medians.push_back(median(dev));
    if (m == max_m) {
      for (double d : dev) max_dev_last = std::max(max_dev_last, d);
    }
  }
  result.summary["m"] = c.m;
  result.summary["n"] = n;
  result.summary["median_deviation"] = medians;
  result.summary["median_deviation_decreasing"] = detail::strictly_decreasing(medians);
  result.summary["max_deviation_at_largest_m"] = max_dev_last;
  result.summary["all_finite_positive"] = finite_positive;
  result.summary["wall_time_seconds"] = clock.seconds();
  result.trials = std::move(table);
  return result;
}

}  // namespace padeclust
