#include "padeclust/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "padeclust/errors.hpp"

namespace padeclust {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSlack = 1e-12;

double grid_angle(std::size_t k, std::size_t grid) {
  return kTwoPi * static_cast<double>(k) / static_cast<double>(grid);
}

// Smallest k with grid_angle(k) >= arg, so a point lies in (theta_a, theta_b] iff a < k <= b.
std::size_t grid_bin(double arg, std::size_t grid) {
  auto k = static_cast<std::size_t>(std::ceil(arg / kTwoPi * static_cast<double>(grid)));
  k = std::min(k, grid);
  while (k > 0 && grid_angle(k - 1, grid) >= arg) --k;
  while (k < grid && grid_angle(k, grid) < arg) ++k;
  return k;
}

double tent(double x, double centre, double width) {
  return std::max(0.0, 1.0 - std::abs(x - centre) / width);
}

}  // namespace

EmpiricalMeasure::EmpiricalMeasure(std::vector<Complex> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("EmpiricalMeasure: no points");
}

double arg_2pi(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double annulus_mass(const EmpiricalMeasure& mu, double r, double rho) {
  const double lo = (1.0 - rho) * r;
  const double hi = (1.0 + rho) * r;
  std::size_t count = 0;
  for (const auto& z : mu.points()) {
    const double m = std::abs(z);
    if (m > lo && m < hi) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(mu.size());
}

double sector_mass(const EmpiricalMeasure& mu, double theta, double phi) {
  std::size_t count = 0;
  for (const auto& z : mu.points()) {
    const double a = arg_2pi(z);
    if (a > theta && a <= phi) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(mu.size());
}

RadialCheck radial_bound_check(const EmpiricalMeasure& mu, const EtRatio& et, double rho) {
  RadialCheck c;
  c.defect = 1.0 - annulus_mass(mu, 1.0, rho);
  c.bound = et.log_value / (rho * static_cast<double>(mu.size()));
  c.holds = c.defect <= c.bound + kSlack;
  c.jensen_bound = 2.0 * et.log_value / (static_cast<double>(mu.size()) * std::log1p(rho));
  c.jensen_holds = c.defect <= c.jensen_bound + kSlack;
  return c;
}

double sector_discrepancy(const EmpiricalMeasure& mu, std::size_t grid_size) {
  if (grid_size < 4) throw std::invalid_argument("sector_discrepancy: grid_size < 4");
  // prefix[b] = number of points with Arg <= theta_b
  std::vector<std::size_t> prefix(grid_size + 1, 0);
  for (const auto& z : mu.points()) ++prefix[grid_bin(arg_2pi(z), grid_size)];
  for (std::size_t k = 1; k <= grid_size; ++k) prefix[k] += prefix[k - 1];

  const double total = static_cast<double>(mu.size());
  const double g = static_cast<double>(grid_size);
  double worst = 0.0;
  for (std::size_t a = 0; a < grid_size; ++a) {
    for (std::size_t b = a + 1; b < grid_size; ++b) {
      const double mass = static_cast<double>(prefix[b] - prefix[a]) / total;
      worst = std::max(worst, std::abs(static_cast<double>(b - a) / g - mass));
    }
  }
  return worst;
}

double et_discrepancy_bound(const EtRatio& et, std::size_t n) {
  return 16.0 * std::sqrt(et.log_value / static_cast<double>(n));
}

double bl_upper(const EtRatio& et, std::size_t n) {
  return 32.0 * std::pow(et.log_value / static_cast<double>(n), 0.25);
}

double bl_lower_estimate(const EmpiricalMeasure& mu, std::size_t family_size) {
  if (family_size < 8) throw std::invalid_argument("bl_lower_estimate: family_size < 8");
  const std::size_t harmonics = family_size / 2;
  const double total = static_cast<double>(mu.size());

  std::vector<double> modulus;
  std::vector<double> angle;
  modulus.reserve(mu.size());
  angle.reserve(mu.size());
  for (const auto& z : mu.points()) {
    modulus.push_back(std::abs(z));
    angle.push_back(arg_2pi(z));
  }

  double best = 0.0;
  // min(|z|,1) e^{ik Arg z}: sup 1, Lipschitz k, zero circle average for k >= 1.
  for (std::size_t k = 1; k <= harmonics; ++k) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < modulus.size(); ++i) {
      const double w = std::min(modulus[i], 1.0);
      re += w * std::cos(static_cast<double>(k) * angle[i]);
      im += w * std::sin(static_cast<double>(k) * angle[i]);
    }
    const double scale = 1.0 / (1.0 + static_cast<double>(k));
    best = std::max(best, scale * std::abs(re) / total);
    best = std::max(best, scale * std::abs(im) / total);
  }

  // Radial tents max(0, 1 - ||z| - c| / w): sup 1, Lipschitz 1/w, circle average tent(1).
  const std::size_t centres = harmonics;
  const double widths[] = {2.0 / static_cast<double>(centres), 0.5, 1.0};
  for (const double w : widths) {
    for (std::size_t j = 0; j <= centres; ++j) {
      const double c = 2.0 * static_cast<double>(j) / static_cast<double>(centres);
      double s = 0.0;
      for (const double m : modulus) s += tent(m, c, w);
      const double diff = s / total - tent(1.0, c, w);
      best = std::max(best, std::abs(diff) / (1.0 + 1.0 / w));
    }
  }
  return best;
}

double radius_R_s(const RootSet& roots, std::size_t s) {
  if (s >= roots.size()) {
    throw IndexOutOfRange("radius_R_s: s = " + std::to_string(s) + " but only " +
                          std::to_string(roots.size()) + " roots");
  }
  return std::abs(roots.roots[s]);
}

double zero_counting_integral(std::span<const Complex> roots, double r) {
  double sum = 0.0;
  for (const auto& z : roots) {
    const double m = std::abs(z);
    if (m < r) sum += std::log(r / m);
  }
  return sum;
}

double zero_counting_integral(const RootSet& roots, double r) {
  return zero_counting_integral(std::span<const Complex>(roots.roots), r);
}

ClusteringReport clustering_report(const ComplexPolynomial& p, const RootSet& roots,
                                   const ReportOptions& options) {
  const EtRatio et = et_ratio(p);
  const EmpiricalMeasure mu(roots);
  const std::size_t n = mu.size();

  ClusteringReport r;
  r.et_log = et.log_value;
  r.rhos = options.rhos;
  for (const double rho : options.rhos) {
    const RadialCheck c = radial_bound_check(mu, et, rho);
    r.radial_defect.push_back(c.defect);
    r.radial_bound.push_back(c.bound);
    r.radial_jensen_bound.push_back(c.jensen_bound);
    r.radial_holds = r.radial_holds && c.holds;
    r.radial_jensen_holds = r.radial_jensen_holds && c.jensen_holds;
  }
  r.max_sector_discrepancy = sector_discrepancy(mu, options.grid_size);
  r.sector_bound = et_discrepancy_bound(et, n);
  r.sector_holds = r.max_sector_discrepancy <= r.sector_bound + kSlack;
  r.bl_upper = bl_upper(et, n);
  r.bl_lower_estimate = bl_lower_estimate(mu, options.family_size);
  r.bl_consistent = r.bl_lower_estimate <= r.bl_upper + kSlack;
  return r;
}

}  // namespace padeclust
