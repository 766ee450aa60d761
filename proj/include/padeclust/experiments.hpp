#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <exception>
#include <iosfwd>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "padeclust/cluster.hpp"
#include "padeclust/config.hpp"
#include "padeclust/pade.hpp"

namespace padeclust {

inline constexpr int kSummarySchemaVersion = 1;

/// Numeric trial table; booleans are 0/1 and missing values NaN.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Throws MissingData for an unknown column.
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
  void write_csv(std::ostream& out) const;
  /// Throws MissingData on a malformed file.
  static Table read_csv(std::istream& in);
};

/// Shortest round-trip decimal, locale independent; "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double x);

struct RunResult {
  ExperimentConfig config;
  Table trials;
  nlohmann::json summary;
  std::size_t invariant_violations = 0;

  bool invariant_breach() const noexcept { return invariant_violations > 0; }
};

RunResult run_experiment(const ExperimentConfig& config);
RunResult run_et_clustering(const ExperimentConfig& config);
RunResult run_discrete_example(const ExperimentConfig& config);
RunResult run_toeplitz_anticoncentration(const ExperimentConfig& config);
RunResult run_det_growth(const ExperimentConfig& config);
RunResult run_zero_radius(const ExperimentConfig& config);
RunResult run_pole_clustering(const ExperimentConfig& config);

/// Deterministic-inequality checks on one successful Pade solve.
struct PadeInvariants {
  ClusteringReport report;
  EtBoundChain chain;
  bool chain_holds = true;  // l1 inequality, bounds and monotone chain

  bool proven_hold() const noexcept { return chain_holds && report.proven_hold(); }
};

/// Throws DegenerateSystem / EndCoefficientZero / NonConvergence when the checks cannot run.
PadeInvariants check_pade_invariants(std::span<const double> coeffs, const PadePair& pair,
                                     const ReportOptions& options = {},
                                     Precision precision = Precision::kDouble);

double median(std::vector<double> v);
/// Least-squares y = a + b x; returns {a, b, r^2}.
std::array<double, 3> affine_fit(const std::vector<double>& x, const std::vector<double>& y);

std::size_t resolve_threads(std::size_t requested);

/// Runs f(i) for i in [0, count) on `threads` workers; the first exception is rethrown.
template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& f) {
  threads = std::max<std::size_t>(1, std::min(resolve_threads(threads), count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace padeclust
