#include <cmath>

#include "experiments_internal.hpp"
#include "padeclust/errors.hpp"
#include "padeclust/sampler.hpp"

namespace padeclust {

namespace {

using detail::kNaN;

constexpr double kRatioLo = 0.35;
constexpr double kRatioHi = 0.65;
constexpr double kRateLo = 0.05;
constexpr double kRateHi = 20.0;
constexpr double kPoleAnnulusRho = 0.1;

// (1/2) log sum_{k<=N} r^(2k)
double half_log_rho(double r, std::size_t n) {
  const double r2 = r * r;
  return 0.5 * (std::log1p(-std::pow(r2, static_cast<double>(n + 1))) - std::log1p(-r2));
}

std::vector<std::string> zero_radius_columns(const ExperimentConfig& c) {
  std::vector<std::string> cols{"trial_index", "N", "excluded", "extended", "residual",
                                "roots_in_unit_disc"};
  for (double r : c.r) cols.push_back("ratio_" + format_number(r));
  for (auto s : c.s) cols.push_back("R_" + std::to_string(s));
  for (auto s : c.s) cols.push_back("rate_" + std::to_string(s));
  for (double r : c.r) cols.push_back("jensen_dev_" + format_number(r));
  for (const char* name :
       {"et_log", "sector_discrepancy", "bl_lower", "radial_stated_ok", "invariants_ok"}) {
    cols.emplace_back(name);
  }
  return cols;
}

}  // namespace

RunResult run_zero_radius(const ExperimentConfig& c) {
  c.validate();
  detail::Stopwatch clock;
  Table table;
  table.columns = zero_radius_columns(c);
  table.rows.resize(c.trials);
  parallel_for(c.trials, c.threads, [&](std::size_t i) {
    std::vector<double> row(table.columns.size(), kNaN);
    std::size_t k = 0;
    row[k++] = static_cast<double>(i);
    row[k++] = static_cast<double>(c.N);
    const auto a = sample(c.spec, c.N, c.seed, i).coeffs;
    const auto f = ComplexPolynomial::from_real(a);
    RootSet roots;
    try {
      roots = find_roots(f, RootOptions{1e-10, 1000, c.precision});
    } catch (const Error&) {
      row[k] = 1.0;  // excluded
      row[k + 1] = 0.0;
      table.rows[i] = std::move(row);
      return;
    }
    row[k++] = 0.0;
    row[k++] = roots.precision_used == Precision::kExtended ? 1.0 : 0.0;
    row[k++] = roots.residual;
    std::size_t inside = 0;
    for (const auto& z : roots.roots) inside += std::abs(z) < 1.0 ? 1 : 0;
    row[k++] = static_cast<double>(inside);
    for (double r : c.r) {
      row[k++] = -zero_counting_integral(roots, r) / std::log1p(-r * r);
    }
    for (auto s : c.s) row[k++] = radius_R_s(roots, s);
    for (auto s : c.s) {
      const double sd = static_cast<double>(s);
      row[k++] = (1.0 - radius_R_s(roots, s)) * sd / std::log(sd);
    }
    const double a0 = std::abs(a[0]);
    for (double r : c.r) row[k++] = jensen_rhs(roots, a0, r) - half_log_rho(r, c.N);
    try {
      const ClusteringReport rep =
          clustering_report(f, roots, ReportOptions{c.rho, c.grid_size, c.family_size});
      row[k++] = rep.et_log;
      row[k++] = rep.max_sector_discrepancy;
      row[k++] = rep.bl_lower_estimate;
      row[k++] = rep.radial_holds ? 1.0 : 0.0;
      row[k++] = rep.proven_hold() ? 1.0 : 0.0;
    } catch (const EndCoefficientZero&) {
      // inequalities need nonzero end coefficients; leave NaN
    }
    table.rows[i] = std::move(row);
  });

  RunResult result;
  result.config = c;
  const auto ok = table.column("invariants_ok");
  for (const auto& r : table.rows) result.invariant_violations += r[ok] == 0.0 ? 1 : 0;
  result.summary = detail::base_summary(c, table, c.trials, 0.0, result.invariant_violations);

  const auto clean_rows = [&] {
    std::vector<const std::vector<double>*> out;
    const auto exc = table.column("excluded");
    for (const auto& r : table.rows) {
      if (r[exc] == 0.0) out.push_back(&r);
    }
    return out;
  }();
  const double used = static_cast<double>(clean_rows.size());

  nlohmann::json ratios = nlohmann::json::array();
  for (double r : c.r) {
    const auto col = table.column("ratio_" + format_number(r));
    std::vector<double> v;
    std::size_t in_bracket = 0;
    for (const auto* row : clean_rows) {
      v.push_back((*row)[col]);
      in_bracket += ((*row)[col] >= kRatioLo && (*row)[col] <= kRatioHi) ? 1 : 0;
    }
    const auto jcol = table.column("jensen_dev_" + format_number(r));
    std::vector<double> dev;
    for (const auto* row : clean_rows) dev.push_back((*row)[jcol]);
    ratios.push_back({{"r", r},
                      {"median_ratio", detail::number_or_null(median(v))},
                      {"fraction_in_bracket", used > 0 ? double(in_bracket) / used : 0.0},
                      {"median_jensen_deviation", detail::number_or_null(median(dev))}});
  }
  result.summary["ratio_target"] = 0.5;
  result.summary["ratio_bracket"] = {kRatioLo, kRatioHi};
  result.summary["ratios"] = ratios;

  std::size_t rate_ok = 0;
  nlohmann::json rates = nlohmann::json::array();
  for (auto s : c.s) {
    rates.push_back({{"s", s},
                     {"median_rate", detail::number_or_null(median(
                                         detail::clean_values(table, "rate_" + std::to_string(s), {})))}});
  }
  for (const auto* row : clean_rows) {
    bool all = true;
    for (auto s : c.s) {
      const double v = (*row)[table.column("rate_" + std::to_string(s))];
      all = all && v >= kRateLo && v <= kRateHi;
    }
    rate_ok += all ? 1 : 0;
  }
  result.summary["rate_window"] = {kRateLo, kRateHi};
  result.summary["rates"] = rates;
  result.summary["fraction_rates_in_window"] = used > 0 ? double(rate_ok) / used : 0.0;

  std::size_t with_root = 0;
  const auto icol = table.column("roots_in_unit_disc");
  for (const auto* row : clean_rows) with_root += (*row)[icol] > 0.0 ? 1 : 0;
  result.summary["fraction_with_root_in_unit_disc"] = used > 0 ? double(with_root) / used : 0.0;
  result.summary["wall_time_seconds"] = clock.seconds();
  result.trials = std::move(table);
  return result;
}

RunResult run_pole_clustering(const ExperimentConfig& c) {
  c.validate();
  detail::Stopwatch clock;
  const std::size_t m = c.m[0];
  Table table;
  table.columns = {"trial_index", "m",         "n",          "degenerate",
                   "excluded",    "extended",  "R_m",        "median_abs_deviation",
                   "annulus_mass", "radial_stated_ok", "invariants_ok"};
  const std::size_t cols = table.columns.size();
  table.rows.resize(c.trials * c.n.size());
  parallel_for(c.trials, c.threads, [&](std::size_t seed_index) {
    const auto a = sample(c.spec, c.N, c.seed, seed_index).coeffs;
    double target = kNaN;
    bool series_ok = true;
    try {
      target = radius_R_s(find_roots(ComplexPolynomial::from_real(a),
                                     RootOptions{1e-10, 1000, c.precision}),
                          m);
    } catch (const Error&) {
      series_ok = false;
    }
    for (std::size_t k = 0; k < c.n.size(); ++k) {
      const std::size_t n = c.n[k];
      std::vector<double> row(cols, kNaN);
      row[0] = static_cast<double>(seed_index);
      row[1] = static_cast<double>(m);
      row[2] = static_cast<double>(n);
      row[3] = 0.0;
      row[4] = series_ok ? 0.0 : 1.0;
      row[6] = target;
      auto& slot = table.rows[seed_index * c.n.size() + k];
      if (!series_ok) {
        slot = std::move(row);
        continue;
      }
      PadePair pair;
      try {
        pair = pade(a, m, n, PadeOptions{c.precision});
      } catch (const DegenerateSystem&) {
        row[3] = 1.0;
        slot = std::move(row);
        continue;
      }
      row[5] = pair.diagnostics.precision_used == Precision::kExtended ? 1.0 : 0.0;
      try {
        const RootSet zeros = find_roots(pair.q, RootOptions{1e-10, 1000, c.precision});
        std::vector<double> dev;
        for (const auto& z : zeros.roots) dev.push_back(std::abs(std::abs(z) - target));
        row[7] = median(dev);
        row[8] = annulus_mass(EmpiricalMeasure(zeros), target, kPoleAnnulusRho);
        try {
          const ClusteringReport rep =
              clustering_report(pair.q, zeros, ReportOptions{c.rho, c.grid_size, c.family_size});
          row[9] = rep.radial_holds ? 1.0 : 0.0;
          row[10] = rep.proven_hold() ? 1.0 : 0.0;
        } catch (const EndCoefficientZero&) {
          // vanishing q_n: the inequalities do not apply
        }
      } catch (const Error&) {
        row[4] = 1.0;
      }
      slot = std::move(row);
    }
  });

  RunResult result;
  result.config = c;
  const auto ok = table.column("invariants_ok");
  for (const auto& r : table.rows) result.invariant_violations += r[ok] == 0.0 ? 1 : 0;
  result.summary = detail::base_summary(c, table, c.trials, 0.0, result.invariant_violations);
  std::vector<double> medians, masses;
  for (auto n : c.n) {
    medians.push_back(median(detail::clean_values(table, "median_abs_deviation", {{"n", double(n)}})));
    masses.push_back(median(detail::clean_values(table, "annulus_mass", {{"n", double(n)}})));
  }
  result.summary["m"] = m;
  result.summary["n"] = c.n;
  result.summary["median_of_median_abs_deviation"] = medians;
  result.summary["median_annulus_mass"] = masses;
  result.summary["annulus_rho"] = kPoleAnnulusRho;
  if (m == 0) {
    // control arm: zeros relate to Taylor sections of 1/f; no clustering verdict
    result.summary["non_increasing"] = nullptr;
  } else {
    result.summary["non_increasing"] = detail::non_increasing(medians);
  }
  result.summary["wall_time_seconds"] = clock.seconds();
  result.trials = std::move(table);
  return result;
}

}  // namespace padeclust
