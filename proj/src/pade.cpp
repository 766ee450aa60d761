#include "padeclust/pade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "padeclust/errors.hpp"

namespace padeclust {

namespace {

template <class T>
PadePair pade_impl(std::span<const T> coeffs, std::size_t m, std::size_t n, double cap,
                   Precision tag) {
  const ToeplitzTriple<T> triple = build_triple<T>(coeffs, m, n);
  const std::vector<T> q = solve_denominator<T>(triple, cap);

  PadePair pair;
  pair.m = m;
  pair.n = n;
  pair.diagnostics.precision_used = tag;
  if (n > 0) {
    const LuFactorization<T> lu(triple.denominator_matrix);
    const DetResult<T> det = lu.determinant();
    pair.diagnostics.logdet_denominator = det.log_abs;
    pair.diagnostics.condition = det.condition_estimate;
  }

  std::vector<Complex> p(m + 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i <= m; ++i) {
    T acc(0);
    for (std::size_t j = 0; j <= n; ++j) acc += triple.numerator_matrix(i, j) * q[j];
    p[i] = to_complex(acc);
  }
  std::vector<Complex> qc(n + 1);
  for (std::size_t j = 0; j <= n; ++j) qc[j] = to_complex(q[j]);
  qc[0] = Complex{1.0, 0.0};
  pair.p = ComplexPolynomial(std::move(p));
  pair.q = ComplexPolynomial(std::move(qc));
  return pair;
}

std::vector<Complex> widen(std::span<const double> a) { return {a.begin(), a.end()}; }

}  // namespace

PadePair pade(std::span<const double> coeffs, std::size_t m, std::size_t n,
              const PadeOptions& options) {
  PadePair pair;
  try {
    pair = pade_impl<double>(coeffs, m, n, kConditionCapDouble, Precision::kDouble);
  } catch (const DegenerateSystem&) {
    if (options.precision != Precision::kExtended) throw;
    std::vector<Extended> wide(coeffs.begin(), coeffs.end());
    pair = pade_impl<Extended>(std::span<const Extended>(wide), m, n, kConditionCapExtended,
                               Precision::kExtended);
  }
  pair.diagnostics.order_residual = validate_order(coeffs, pair);
  return pair;
}

PadePair pade(std::span<const Complex> coeffs, std::size_t m, std::size_t n) {
  PadePair pair = pade_impl<Complex>(coeffs, m, n, kConditionCapDouble, Precision::kDouble);
  pair.diagnostics.order_residual = validate_order(coeffs, pair);
  return pair;
}

double validate_order(std::span<const Complex> coeffs, const PadePair& pair) {
  const std::size_t order = pair.m + pair.n;
  if (coeffs.size() < order + 1) {
    throw InsufficientCoefficients("validate_order: need m+n+1 coefficients");
  }
  const ComplexPolynomial f(std::vector<Complex>(coeffs.begin(),
                                                 coeffs.begin() + static_cast<std::ptrdiff_t>(order) + 1));
  const ComplexPolynomial fq = truncated_product(f, pair.q, order);
  double worst = 0.0;
  for (std::size_t j = 0; j <= order; ++j) {
    const Complex pj = j < pair.p.size() ? pair.p[j] : Complex{0.0, 0.0};
    worst = std::max(worst, std::abs(fq[j] - pj));
  }
  double amax = 0.0;
  for (std::size_t j = 0; j <= order; ++j) amax = std::max(amax, std::abs(coeffs[j]));
  double q1 = 0.0;
  for (const auto& c : pair.q.coeffs()) q1 += std::abs(c);
  return worst / ((1.0 + amax) * q1);
}

double validate_order(std::span<const double> coeffs, const PadePair& pair) {
  const std::vector<Complex> w = widen(coeffs);
  return validate_order(std::span<const Complex>(w), pair);
}

EtRatio et_ratio(const ComplexPolynomial& p) {
  const auto& c = p.coeffs();
  double cmax = 0.0;
  double sum = 0.0;
  for (const auto& x : c) {
    cmax = std::max(cmax, std::abs(x));
    sum += std::abs(x);
  }
  const double a0 = std::abs(c.front());
  const double an = std::abs(c.back());
  const double cut = kZeroThreshold * cmax;
  if (!(a0 > cut) || !(an > cut)) {
    throw EndCoefficientZero("et_ratio: end coefficient below the zero threshold");
  }
  EtRatio r;
  r.n_coeffs = c.size();
  r.log_value = std::log(sum) - 0.5 * (std::log(a0) + std::log(an));
  r.value = std::exp(r.log_value);
  return r;
}

bool EtBoundChain::l1_inequality_holds() const {
  return numerator_l1 <= numerator_l1_bound * (1.0 + 1e-12);
}

bool EtBoundChain::bounds_hold() const {
  return log_et <= log_l1_bound + tolerance && log_et <= log_cauchy_binet_bound + tolerance &&
         log_et <= log_amgm_bound + tolerance;
}

bool EtBoundChain::monotone() const {
  return log_l1_bound <= log_cauchy_binet_bound + tolerance &&
         log_cauchy_binet_bound <= log_amgm_bound + tolerance;
}

EtBoundChain et_bound_chain(std::span<const double> coeffs, const ToeplitzTriple<double>& triple,
                            const PadePair& pair) {
  const std::size_t m = triple.m;
  const std::size_t n = triple.n;
  EtBoundChain chain;
  chain.log_et = et_ratio(pair.p).log_value;

  const DetResult<double> det_n = log_abs_det(triple.denominator_matrix);
  const DetResult<double> det_n1 = log_abs_det(square_toeplitz<double>(coeffs, m, n + 1));
  if (det_n.singular || det_n1.singular) {
    throw DegenerateSystem("et_bound_chain: singular A_" + std::to_string(m) + " determinant");
  }
  chain.logdet_n = det_n.log_abs;
  chain.logdet_n1 = det_n1.log_abs;

  // Gram matrix T T^* and the entrywise 1-norm of T.
  const Matrix<double>& t = triple.order_matrix;
  Matrix<double> gram(n, n);
  double t_entry_l1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k <= n; ++k) s += t(i, k) * t(j, k);
      gram(i, j) = s;
    }
    for (std::size_t k = 0; k <= n; ++k) t_entry_l1 += std::abs(t(i, k));
  }
  const DetResult<double> gdet = log_abs_det(gram);
  chain.log_gram_det = gdet.log_abs;

  double head_sum = 0.0;
  for (std::size_t j = 0; j <= m; ++j) head_sum += std::abs(coeffs[j]);
  double q1 = 0.0;
  for (const auto& c : pair.q.coeffs()) q1 += std::abs(c);
  double p1 = 0.0;
  for (const auto& c : pair.p.coeffs()) p1 += std::abs(c);
  chain.numerator_l1 = p1;
  chain.numerator_l1_bound = q1 * head_sum;

  const double log_head = std::log(head_sum) - 0.5 * std::log(std::abs(coeffs[0]));
  const double log_dets = 0.5 * (chain.logdet_n + chain.logdet_n1);
  const double nn = static_cast<double>(n);

  chain.log_l1_bound = std::log(q1) + std::log(head_sum) -
                       0.5 * (std::log(std::abs(coeffs[0])) + std::log(std::abs(pair.p[m])));
  chain.log_cauchy_binet_bound =
      log_head + 0.5 * std::log(nn + 1.0) + 0.5 * chain.log_gram_det - log_dets;
  const double log_spread = n == 0 ? 0.0 : nn * (std::log(t_entry_l1) - 0.5 * std::log(nn));
  chain.log_amgm_bound = log_head + 0.5 * std::log(nn + 1.0) + log_spread - log_dets;

  // p_m and the minors carry the solve's conditioning; allow for it in comparisons.
  const double cond = std::max({det_n.condition_estimate, det_n1.condition_estimate,
                                gdet.condition_estimate, 1.0});
  chain.tolerance = 1e-9 + 64.0 * std::numeric_limits<double>::epsilon() * cond;
  return chain;
}

}  // namespace padeclust
