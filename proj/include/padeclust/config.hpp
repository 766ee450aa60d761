#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "padeclust/poly.hpp"
#include "padeclust/sampler.hpp"

namespace padeclust {

inline constexpr int kConfigSchemaVersion = 1;

enum class ExperimentName {
  kEtClustering,
  kDiscreteExample,
  kToeplitzAnticoncentration,
  kDetGrowth,
  kZeroRadius,
  kPoleClustering,
};

/// "et-clustering", "discrete-example", "toeplitz-anticoncentration", "det-growth",
/// "zero-radius", "pole-clustering"
std::string experiment_name(ExperimentName name);
/// Throws ConfigError listing the valid names.
ExperimentName parse_experiment(const std::string& name);
std::vector<std::string> experiment_names();

struct ExperimentConfig {
  ExperimentName name = ExperimentName::kEtClustering;
  DistributionSpec spec;
  std::vector<std::size_t> m;       // numerator degrees / determinant offsets / pole-count target
  std::vector<std::size_t> n;       // denominator degrees / matrix sizes
  std::size_t N = 0;                // series truncation; 0 means m + n per cell
  double delta = 0.5;
  std::vector<double> epsilon;      // anti-concentration grid
  std::vector<double> rho{0.05, 0.1, 0.2};
  std::vector<double> r;            // zero-radius schedule
  std::vector<std::size_t> s;       // R_s indices
  std::size_t trials = 100;         // per cell, or seeds for per-seed protocols
  std::uint64_t seed = 1;
  std::size_t grid_size = 256;
  std::size_t family_size = 64;
  Precision precision = Precision::kDouble;
  std::size_t threads = 0;          // 0: hardware concurrency

  /// Throws ConfigError when the config cannot drive its protocol.
  void validate() const;
};

/// Defaults reproducing the reference settings of each protocol.
ExperimentConfig default_config(ExperimentName name);

std::string precision_name(Precision p);
Precision parse_precision(const std::string& name);

nlohmann::json to_json(const ExperimentConfig& c);
/// Missing keys fall back to default_config(name); "experiment" is required unless
/// `fallback` names it. Throws ConfigError on bad values or schema version.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentName fallback);

}  // namespace padeclust
