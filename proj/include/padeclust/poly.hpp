#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace padeclust {

using Complex = std::complex<double>;

enum class Precision { kDouble, kExtended };

// A coefficient is treated as zero when |c| <= kZeroThreshold * max_j |c_j|.
inline constexpr double kZeroThreshold = 1e-13;

/// Dense complex polynomial; coeffs()[j] multiplies z^j.
class ComplexPolynomial {
 public:
  explicit ComplexPolynomial(std::vector<Complex> coeffs);
  static ComplexPolynomial from_real(std::span<const double> coeffs);

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Highest index whose coefficient clears the zero threshold (0 for the zero polynomial).
  std::size_t degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return zero_; }

  Complex operator[](std::size_t j) const { return coeffs_[j]; }
  Complex leading() const { return coeffs_[degree_]; }

  /// Copy with the coefficients above degree() dropped.
  ComplexPolynomial trimmed() const;

  Complex operator()(Complex z) const;

 private:
  std::vector<Complex> coeffs_;
  std::size_t degree_ = 0;
  bool zero_ = true;
};

Complex evaluate(const ComplexPolynomial& p, Complex z);

/// Convolution of the coefficient sequences restricted to indices 0..order.
ComplexPolynomial truncated_product(const ComplexPolynomial& f, const ComplexPolynomial& g,
                                    std::size_t order);

/// log|p(z)| without overflow for large |z|^degree.
double log_abs_evaluate(const ComplexPolynomial& p, Complex z);

struct RootSet {
  std::vector<Complex> roots;  // non-decreasing modulus
  double residual = 0.0;       // max |p(z)| / (1+|z|)^degree
  bool converged = false;
  int iterations = 0;
  Precision precision_used = Precision::kDouble;

  std::size_t size() const noexcept { return roots.size(); }
};

struct RootOptions {
  double tol = 1e-10;
  int max_iter = 1000;
  // kExtended runs the double iteration first and retries in float128 when it fails.
  Precision precision = Precision::kDouble;
};

/// Aberth-Ehrlich simultaneous iteration. Exact zero trailing coefficients are
/// split off as roots at the origin before iterating.
/// Throws NonConvergence when max_iter is reached with residual > tol, and
/// DegenerateInput for constant or zero polynomials.
RootSet find_roots(const ComplexPolynomial& p, const RootOptions& options);
RootSet find_roots(const ComplexPolynomial& p, double tol = 1e-10, int max_iter = 1000);

/// (1/2pi) * integral of log|p(r e^{i theta})| by the trapezoid rule on quad_points nodes.
/// Nodes that land within ~1e-12 of a root are shifted by half a grid step.
double circle_log_average(const ComplexPolynomial& p, double r, std::size_t quad_points);

struct CircleAverage {
  double value = 0.0;
  std::size_t quad_points = 0;
  bool converged = false;
};

/// Doubles the node count from 2*degree+16 until successive estimates agree to tol.
CircleAverage circle_log_average_adaptive(const ComplexPolynomial& p, double r, double tol,
                                          std::size_t max_points = std::size_t{1} << 22);

/// log|p(0)| + sum over |z_j| < r of log(r/|z_j|).
double jensen_rhs(const RootSet& roots, double p0_abs, double r);
double jensen_rhs(std::span<const Complex> roots, double p0_abs, double r);

}  // namespace padeclust
