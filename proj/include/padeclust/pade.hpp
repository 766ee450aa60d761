#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "padeclust/poly.hpp"
#include "padeclust/toeplitz.hpp"

namespace padeclust {

struct PadeDiagnostics {
  double logdet_denominator = 0.0;  // log|det A_m^(n)|, 0 when n = 0
  double condition = 1.0;
  double order_residual = 0.0;
  Precision precision_used = Precision::kDouble;
};

/// Numerator p (m+1 coefficients) and denominator q (n+1 coefficients, q[0] == 1).
struct PadePair {
  ComplexPolynomial p{std::vector<Complex>{0.0}};
  ComplexPolynomial q{std::vector<Complex>{1.0}};
  std::size_t m = 0;
  std::size_t n = 0;
  PadeDiagnostics diagnostics;
};

struct PadeOptions {
  // kExtended retries a degenerate double solve in float128 with the extended cap.
  Precision precision = Precision::kDouble;
};

/// [m,n] Pade pair of the series with the given leading coefficients.
/// Throws InsufficientCoefficients or DegenerateSystem.
PadePair pade(std::span<const double> coeffs, std::size_t m, std::size_t n,
              const PadeOptions& options = {});
PadePair pade(std::span<const Complex> coeffs, std::size_t m, std::size_t n);

/// max_{j <= m+n} |[f q - p]_j| / ((1 + max|a|) * ||q||_1) over the window a_0..a_{m+n}.
double validate_order(std::span<const Complex> coeffs, const PadePair& pair);
double validate_order(std::span<const double> coeffs, const PadePair& pair);

struct EtRatio {
  double value = 2.0;
  double log_value = 0.0;
  std::size_t n_coeffs = 0;
};

/// (sum |alpha_j|) / sqrt(|alpha_0| |alpha_N|) with N = p.size()-1.
/// Throws EndCoefficientZero if either end coefficient is below the zero threshold.
EtRatio et_ratio(const ComplexPolynomial& p);

/// Successive upper bounds on log L(P_mn) derived from the Toeplitz data, all in log form.
struct EtBoundChain {
  double log_et = 0.0;
  double log_l1_bound = 0.0;             // ||q||_1 * sum_{j<=m}|a_j| / sqrt(|a_0||p_m|)
  double log_cauchy_binet_bound = 0.0;   // via sqrt((n+1) det(T T^*))
  double log_amgm_bound = 0.0;           // via the entrywise 1-norm of T
  double log_gram_det = 0.0;             // log det(T T^*)
  double logdet_n = 0.0;                 // log|det A_m^(n)|
  double logdet_n1 = 0.0;                // log|det A_m^(n+1)|
  double numerator_l1 = 0.0;             // ||p||_1
  double numerator_l1_bound = 0.0;       // ||q||_1 * sum_{j<=m}|a_j|
  double tolerance = 0.0;                // slack used by holds(), in log units

  bool l1_inequality_holds() const;
  bool bounds_hold() const;     // log_et below every bound
  bool monotone() const;        // l1 <= Cauchy-Binet <= AM-GM
};

/// Throws DegenerateSystem if A_m^(n) or A_m^(n+1) is singular, EndCoefficientZero via et_ratio.
EtBoundChain et_bound_chain(std::span<const double> coeffs, const ToeplitzTriple<double>& triple,
                            const PadePair& pair);

}  // namespace padeclust
