#include "padeclust/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/laplace_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "padeclust/errors.hpp"

namespace padeclust {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void fill_independent(const DistributionSpec& spec, SplitMix64& gen, std::vector<double>& out) {
  switch (spec.kind) {
    case DistributionKind::kGaussian: {
      boost::random::normal_distribution<double> d(0.0, 1.0);
      for (auto& x : out) x = d(gen);
      break;
    }
    case DistributionKind::kUniformContinuous: {
      const double h = std::sqrt(3.0);
      boost::random::uniform_real_distribution<double> d(-h, h);
      for (auto& x : out) x = d(gen);
      break;
    }
    case DistributionKind::kLaplace: {
      boost::random::laplace_distribution<double> d(0.0, 1.0 / std::numbers::sqrt2);
      for (auto& x : out) x = d(gen);
      break;
    }
    case DistributionKind::kDiscretePmM: {
      boost::random::uniform_int_distribution<int> d(-spec.M, spec.M);
      for (auto& x : out) x = d(gen);
      break;
    }
    case DistributionKind::kLogconcaveL1Ball:
      break;
  }
}

// Uniform on r B_1^d: x_j = r s_j E_j / (E_1 + ... + E_{d+1}) with E i.i.d. Exp(1).
void fill_l1_ball(SplitMix64& gen, std::vector<double>& out) {
  const std::size_t d = out.size();
  boost::random::exponential_distribution<double> e(1.0);
  double total = 0.0;
  for (auto& x : out) {
    x = e(gen);
    total += x;
  }
  total += e(gen);
  const double r = l1_ball_radius(d - 1);
  for (auto& x : out) {
    const bool negative = (gen() >> 63) != 0;
    x = r * x / total * (negative ? -1.0 : 1.0);
  }
}

}  // namespace

double DistributionSpec::levy_bound_K(std::size_t n) const {
  switch (kind) {
    case DistributionKind::kGaussian:
      return 2.0 / std::sqrt(2.0 * std::numbers::pi);
    case DistributionKind::kUniformContinuous:
      return 1.0 / std::sqrt(3.0);
    case DistributionKind::kLaplace:
      return std::numbers::sqrt2;  // 2 * max density 1/(2b), b = 1/sqrt(2)
    case DistributionKind::kDiscretePmM:
      return std::numeric_limits<double>::infinity();
    case DistributionKind::kLogconcaveL1Ball:
      // marginal density (d/2r)(1 - |t|/r)^(d-1), d = n+1
      return static_cast<double>(n + 1) / l1_ball_radius(n);
  }
  return std::numeric_limits<double>::infinity();
}

double DistributionSpec::mean_abs_bound_gamma(std::size_t n) const {
  switch (kind) {
    case DistributionKind::kGaussian:
      return std::sqrt(2.0 / std::numbers::pi);
    case DistributionKind::kUniformContinuous:
      return std::sqrt(3.0) / 2.0;
    case DistributionKind::kLaplace:
      return 1.0 / std::numbers::sqrt2;
    case DistributionKind::kDiscretePmM:
      return static_cast<double>(M) * (M + 1) / (2.0 * M + 1.0);
    case DistributionKind::kLogconcaveL1Ball:
      return l1_ball_radius(n) / static_cast<double>(n + 2);
  }
  return 0.0;
}

std::string kind_name(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::kGaussian:
      return "gaussian";
    case DistributionKind::kUniformContinuous:
      return "uniform_continuous";
    case DistributionKind::kLaplace:
      return "laplace";
    case DistributionKind::kDiscretePmM:
      return "discrete_pm_M";
    case DistributionKind::kLogconcaveL1Ball:
      return "logconcave_l1ball";
  }
  return "unknown";
}

DistributionKind parse_kind(const std::string& name) {
  for (auto k : {DistributionKind::kGaussian, DistributionKind::kUniformContinuous,
                 DistributionKind::kLaplace, DistributionKind::kDiscretePmM,
                 DistributionKind::kLogconcaveL1Ball}) {
    if (kind_name(k) == name) return k;
  }
  throw ConfigError("unknown distribution kind '" + name + "'");
}

double l1_ball_radius(std::size_t n) {
  const double d = static_cast<double>(n);
  return std::sqrt((d + 2.0) * (d + 3.0) / 2.0);
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += kGolden;
  return mix(state_);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial_index) {
  return mix(mix(seed) ^ (trial_index * kGolden + 0x632be59bd9b4e019ULL));
}

CoefficientSample sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed,
                         std::uint64_t trial_index) {
  if (spec.kind == DistributionKind::kDiscretePmM && spec.M < 1) {
    throw ConfigError("discrete_pm_M needs M >= 1");
  }
  CoefficientSample s;
  s.seed = seed;
  s.trial_index = trial_index;
  s.spec = spec;
  s.coeffs.assign(n + 1, 0.0);
  SplitMix64 gen(stream_key(seed, trial_index));
  if (spec.kind == DistributionKind::kLogconcaveL1Ball) {
    fill_l1_ball(gen, s.coeffs);
  } else {
    fill_independent(spec, gen, s.coeffs);
  }
  return s;
}

double max_window_fraction(std::vector<double> values, double epsilon) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  std::size_t best = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < values.size(); ++lo) {
    if (hi < lo) hi = lo;
    while (hi < values.size() && values[hi] < values[lo] + 2.0 * epsilon) ++hi;
    best = std::max(best, hi - lo);
  }
  return static_cast<double>(best) / static_cast<double>(values.size());
}

double empirical_levy(const DistributionSpec& spec, double epsilon, std::size_t draws,
                      std::uint64_t seed, std::size_t n) {
  std::vector<double> values;
  values.reserve(draws);
  if (spec.kind == DistributionKind::kLogconcaveL1Ball) {
    for (std::size_t i = 0; i < draws; ++i) values.push_back(sample(spec, n, seed, i).coeffs[0]);
  } else {
    values = sample(spec, draws - 1, seed, 0).coeffs;
  }
  return max_window_fraction(std::move(values), epsilon);
}

}  // namespace padeclust
