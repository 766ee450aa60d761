#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "padeclust/pade.hpp"
#include "padeclust/poly.hpp"

namespace padeclust {

/// Normalised counting measure of a finite multiset of points. Never empty.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::vector<Complex> points);
  explicit EmpiricalMeasure(const RootSet& roots) : EmpiricalMeasure(roots.roots) {}

  const std::vector<Complex>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<Complex> points_;
};

/// Argument in [0, 2pi).
double arg_2pi(Complex z);

/// Fraction of points with (1-rho) r < |z| < (1+rho) r.
double annulus_mass(const EmpiricalMeasure& mu, double r, double rho);

/// Fraction of points with theta < Arg z <= phi.
double sector_mass(const EmpiricalMeasure& mu, double theta, double phi);

struct RadialCheck {
  double defect = 0.0;
  double bound = 0.0;
  bool holds = true;
  // 2 log L / (N log(1+rho)), from Jensen's formula applied to P and its reversal
  double jensen_bound = 0.0;
  bool jensen_holds = true;
};

/// defect = 1 - annulus_mass(mu, 1, rho), bound = log L / (rho N).
/// The stated bound fails for polynomials whose zeros all sit just outside the annulus,
/// e.g. z^N - 1.21^N at rho = 0.2; jensen_bound always holds.
RadialCheck radial_bound_check(const EmpiricalMeasure& mu, const EtRatio& et, double rho);

/// max over grid sectors (2pi a/G, 2pi b/G], 0 <= a < b < G, of |(b-a)/G - mass|.
double sector_discrepancy(const EmpiricalMeasure& mu, std::size_t grid_size = 256);

/// 16 sqrt(log L / N)
double et_discrepancy_bound(const EtRatio& et, std::size_t n);

/// 32 (log L / N)^(1/4)
double bl_upper(const EtRatio& et, std::size_t n);

/// Largest |integral f dmu - integral f d(uniform on the unit circle)| over a fixed family
/// of test functions with Lipschitz + sup norm at most 1.
double bl_lower_estimate(const EmpiricalMeasure& mu, std::size_t family_size = 64);

/// Modulus of the (s+1)-th smallest root. Throws IndexOutOfRange if s >= roots.size().
double radius_R_s(const RootSet& roots, std::size_t s);

/// sum over |z| < r of log(r/|z|), i.e. the integral of (zero count below t)/t over (0, r).
double zero_counting_integral(const RootSet& roots, double r);
double zero_counting_integral(std::span<const Complex> roots, double r);

struct ClusteringReport {
  double et_log = 0.0;
  std::vector<double> rhos;
  std::vector<double> radial_defect;  // one per rho
  std::vector<double> radial_bound;
  std::vector<double> radial_jensen_bound;
  double max_sector_discrepancy = 0.0;
  double sector_bound = 0.0;
  double bl_upper = 0.0;
  double bl_lower_estimate = 0.0;
  bool radial_holds = true;         // against log L / (rho N)
  bool radial_jensen_holds = true;  // against 2 log L / (N log(1+rho))
  bool sector_holds = true;
  bool bl_consistent = true;

  /// Every bound exactly as stated, including log L / (rho N).
  bool all_hold() const noexcept { return radial_holds && sector_holds && bl_consistent; }
  /// The bounds that are theorems; a failure here is a bug.
  bool proven_hold() const noexcept {
    return radial_jensen_holds && sector_holds && bl_consistent;
  }
};

struct ReportOptions {
  std::vector<double> rhos{0.05, 0.1, 0.2};
  std::size_t grid_size = 256;
  std::size_t family_size = 64;
};

/// All clustering metrics of p given its roots. Throws EndCoefficientZero via et_ratio.
ClusteringReport clustering_report(const ComplexPolynomial& p, const RootSet& roots,
                                   const ReportOptions& options = {});

}  // namespace padeclust
