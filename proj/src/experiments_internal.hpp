#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "padeclust/experiments.hpp"

namespace padeclust::detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline const char* kConstantsNote =
    "Probabilistic constants of the underlying theorems are not verified at desk scale; "
    "protocols check event frequencies, monotone trends and deterministic inequalities.";

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Common summary fields; counts are read from the 0/1 columns when present.
nlohmann::json base_summary(const ExperimentConfig& config, const Table& table,
                            std::size_t units, double wall_seconds,
                            std::size_t invariant_violations);

/// JSON number or null for non-finite values.
nlohmann::json number_or_null(double x);

using Filter = std::vector<std::pair<std::string, double>>;

/// Column values of rows matching every (column, value) in `where` that are neither
/// degenerate nor excluded (when those columns exist) and are not NaN.
std::vector<double> clean_values(const Table& table, const std::string& column,
                                 const Filter& where);

bool strictly_decreasing(const std::vector<double>& v);
bool non_increasing(const std::vector<double>& v);

}  // namespace padeclust::detail
