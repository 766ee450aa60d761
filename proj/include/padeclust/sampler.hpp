#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace padeclust {

enum class DistributionKind { kGaussian, kUniformContinuous, kLaplace, kDiscretePmM, kLogconcaveL1Ball };

struct DistributionSpec {
  DistributionKind kind = DistributionKind::kGaussian;
  int M = 1;  // discrete_pm_M only

  bool isotropic() const noexcept { return kind != DistributionKind::kDiscretePmM; }
  bool continuous() const noexcept { return kind != DistributionKind::kDiscretePmM; }
  /// K with sup_t P(|a - t| < eps) <= K eps; infinite for the discrete kind.
  /// The l1-ball marginal depends on the vector length N+1.
  double levy_bound_K(std::size_t n = 0) const;
  /// gamma with E|a_j| <= gamma.
  double mean_abs_bound_gamma(std::size_t n = 0) const;

  bool operator==(const DistributionSpec&) const = default;
};

/// "gaussian", "uniform_continuous", "laplace", "discrete_pm_M", "logconcave_l1ball"
std::string kind_name(DistributionKind kind);
/// Throws ConfigError on an unknown name.
DistributionKind parse_kind(const std::string& name);

/// Radius r with uniform r*B_1^(n+1) having unit coordinate variance: sqrt((n+2)(n+3)/2).
double l1_ball_radius(std::size_t n);

/// SplitMix64 generator; a keyed counter stream when seeded by stream_key.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t state_;
};

/// Per-trial stream key derived from (seed, trial_index).
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial_index);

struct CoefficientSample {
  std::vector<double> coeffs;  // length N+1
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
  DistributionSpec spec;
};

/// Coefficients a_0..a_N; a pure function of its arguments.
CoefficientSample sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed,
                         std::uint64_t trial_index);

/// sup_t P(|a_0 - t| < eps) estimated from `draws` samples of the first coordinate
/// (of a length n+1 vector) by a sliding window over the sorted draws.
double empirical_levy(const DistributionSpec& spec, double epsilon, std::size_t draws,
                      std::uint64_t seed = 0, std::size_t n = 0);

/// Max fraction of values in any window [x, x + 2 eps); the Levy estimate for fixed data.
double max_window_fraction(std::vector<double> values, double epsilon);

}  // namespace padeclust
