#include "padeclust/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "padeclust/errors.hpp"

namespace padeclust {

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("polynomial needs at least one coefficient");
  }
  double cmax = 0.0;
  for (const auto& c : coeffs_) cmax = std::max(cmax, std::abs(c));
  zero_ = cmax == 0.0;
  degree_ = 0;
  if (!zero_) {
    const double cut = kZeroThreshold * cmax;
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
      if (std::abs(coeffs_[j]) > cut) {
        degree_ = j;
        break;
      }
    }
  }
}

ComplexPolynomial ComplexPolynomial::from_real(std::span<const double> coeffs) {
  return ComplexPolynomial(std::vector<Complex>(coeffs.begin(), coeffs.end()));
}

ComplexPolynomial ComplexPolynomial::trimmed() const {
  return ComplexPolynomial(
      std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(degree_) + 1));
}

Complex ComplexPolynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * z + coeffs_[j];
  return acc;
}

Complex evaluate(const ComplexPolynomial& p, Complex z) { return p(z); }

ComplexPolynomial truncated_product(const ComplexPolynomial& f, const ComplexPolynomial& g,
                                    std::size_t order) {
  std::vector<Complex> out(order + 1, Complex{0.0, 0.0});
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return ComplexPolynomial(std::move(out));
}

namespace {

// Horner for p and p' in z (|z| <= 1) or for the reversal in w = 1/z (|z| > 1).
struct Eval {
  Complex value;  // p(z) or rev(w)
  Complex deriv;  // p'(z) or rev'(w)
  bool reversed;
};

Eval horner_with_derivative(const std::vector<Complex>& c, std::size_t d, Complex z) {
  Complex v = 0.0;
  Complex dv = 0.0;
  if (std::abs(z) <= 1.0) {
    for (std::size_t j = d + 1; j-- > 0;) {
      dv = dv * z + v;
      v = v * z + c[j];
    }
    return {v, dv, false};
  }
  const Complex w = 1.0 / z;
  for (std::size_t j = 0; j <= d; ++j) {
    dv = dv * w + v;
    v = v * w + c[j];
  }
  return {v, dv, true};
}

}  // namespace

double log_abs_evaluate(const ComplexPolynomial& p, Complex z) {
  const auto& c = p.coeffs();
  const std::size_t d = p.degree();
  const double mod = std::abs(z);
  if (mod <= 1.0) {
    Complex v = 0.0;
    for (std::size_t j = d + 1; j-- > 0;) v = v * z + c[j];
    return std::log(std::abs(v));
  }
  const Complex w = 1.0 / z;
  Complex v = 0.0;
  for (std::size_t j = 0; j <= d; ++j) v = v * w + c[j];
  return static_cast<double>(d) * std::log(mod) + std::log(std::abs(v));
}

double circle_log_average(const ComplexPolynomial& p, double r, std::size_t quad_points) {
  if (p.is_zero()) throw DegenerateInput("circle_log_average: zero polynomial");
  if (!(r > 0.0)) throw std::invalid_argument("circle_log_average: radius must be positive");
  const std::size_t d = p.degree();
  if (quad_points < 2 * d + 16) {
    throw std::invalid_argument("circle_log_average: need at least 2*degree+16 nodes");
  }
  if (d == 0) return std::log(std::abs(p[0]));

  const double step = 2.0 * std::numbers::pi / static_cast<double>(quad_points);
  const auto& c = p.coeffs();
  double sum = 0.0;
  for (std::size_t k = 0; k < quad_points; ++k) {
    double theta = step * static_cast<double>(k);
    Complex z = std::polar(r, theta);
    // Newton step |p/p'| approximates the distance to the nearest root.
    const Eval e = horner_with_derivative(c, d, z);
    const Complex w = e.reversed ? 1.0 / z : z;
    double dist;
    if (e.reversed) {
      const Complex denom = w * (static_cast<double>(d) * e.value - w * e.deriv);
      dist = std::abs(denom) == 0.0 ? 0.0 : std::abs(e.value / denom);
    } else {
      dist = std::abs(e.deriv) == 0.0 ? (std::abs(e.value) == 0.0 ? 0.0 : 1.0)
                                       : std::abs(e.value / e.deriv);
    }
    if (dist < 1e-12) {
      theta += 0.5 * step;
      z = std::polar(r, theta);
    }
    sum += log_abs_evaluate(p, z);
  }
  return sum / static_cast<double>(quad_points);
}

CircleAverage circle_log_average_adaptive(const ComplexPolynomial& p, double r, double tol,
                                          std::size_t max_points) {
  std::size_t q = 2 * p.degree() + 16;
  double prev = circle_log_average(p, r, q);
  while (2 * q <= max_points) {
    q *= 2;
    const double cur = circle_log_average(p, r, q);
    if (std::abs(cur - prev) <= tol) return {cur, q, true};
    prev = cur;
  }
  return {prev, q, false};
}

double jensen_rhs(std::span<const Complex> roots, double p0_abs, double r) {
  if (!(p0_abs > 0.0)) throw DegenerateInput("jensen_rhs: p(0) = 0, Jensen formula needs p(0) != 0");
  double acc = std::log(p0_abs);
  for (const auto& z : roots) {
    const double m = std::abs(z);
    if (m < r) acc += std::log(r / m);
  }
  return acc;
}

double jensen_rhs(const RootSet& roots, double p0_abs, double r) {
  return jensen_rhs(std::span<const Complex>(roots.roots), p0_abs, r);
}

}  // namespace padeclust
