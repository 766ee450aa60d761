#include "padeclust/toeplitz.hpp"

#include <cmath>
#include <string>

#include "padeclust/errors.hpp"

namespace padeclust {

namespace {

double log_magnitude(double x) { return std::log(std::abs(x)); }
double log_magnitude(const std::complex<double>& x) { return std::log(std::abs(x)); }
double log_magnitude(const Extended& x) { return static_cast<double>(log(abs(x))); }

// |x| in the scalar's own real type, so pivot comparisons keep full precision.
double exact_abs(double x) { return std::abs(x); }
double exact_abs(const std::complex<double>& x) { return std::abs(x); }
Extended exact_abs(const Extended& x) { return abs(x); }

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }
std::complex<double> sign_of(const std::complex<double>& x) {
  const double a = std::abs(x);
  return a == 0.0 ? std::complex<double>{1.0, 0.0} : x / a;
}
Extended sign_of(const Extended& x) { return x < 0 ? Extended(-1) : Extended(1); }

template <class T>
T entry(std::span<const T> a, std::ptrdiff_t l) {
  return l < 0 ? T(0) : a[static_cast<std::size_t>(l)];
}

template <class T>
double norm1(std::span<const T> v) {
  double s = 0.0;
  for (const auto& x : v) s += magnitude(x);
  return s;
}

}  // namespace

template <class T>
ToeplitzTriple<T> build_triple(std::span<const T> coeffs, std::size_t m, std::size_t n) {
  if (coeffs.size() < m + n + 1) {
    throw InsufficientCoefficients("build_triple: need " + std::to_string(m + n + 1) +
                                   " coefficients for [" + std::to_string(m) + "," +
                                   std::to_string(n) + "], got " + std::to_string(coeffs.size()));
  }
  ToeplitzTriple<T> t;
  t.m = m;
  t.n = n;
  const auto mi = static_cast<std::ptrdiff_t>(m);
  t.numerator_matrix = Matrix<T>(m + 1, n + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      t.numerator_matrix(i, j) =
          entry(coeffs, static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j));
    }
  }
  t.order_matrix = Matrix<T>(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      t.order_matrix(i, j) =
          entry(coeffs, mi + 1 + static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j));
    }
  }
  t.denominator_matrix = Matrix<T>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.denominator_matrix(i, j) = t.order_matrix(i, j + 1);
  }
  return t;
}

template <class T>
Matrix<T> square_toeplitz(std::span<const T> coeffs, std::size_t m, std::size_t size) {
  if (size > 0 && coeffs.size() < m + size) {
    throw InsufficientCoefficients("square_toeplitz: need " + std::to_string(m + size) +
                                   " coefficients, got " + std::to_string(coeffs.size()));
  }
  Matrix<T> a(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      a(i, j) = entry(coeffs, static_cast<std::ptrdiff_t>(m + i) - static_cast<std::ptrdiff_t>(j));
    }
  }
  return a;
}

template <class T>
LuFactorization<T>::LuFactorization(Matrix<T> a) : lu_(std::move(a)) {
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += magnitude(lu_(i, j));
    norm1_ = std::max(norm1_, col);
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    auto best = exact_abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const auto v = exact_abs(lu_(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0) {
      singular_ = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
      ++swaps_;
    }
    const T pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T factor = lu_(i, k) / pivot;
      lu_(i, k) = factor;
      if (factor == T(0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
    }
  }
}

template <class T>
DetResult<T> LuFactorization<T>::determinant() const {
  DetResult<T> r;
  if (singular_) {
    r.singular = true;
    r.log_abs = -std::numeric_limits<double>::infinity();
    r.phase = T(0);
    r.condition_estimate = std::numeric_limits<double>::infinity();
    return r;
  }
  T phase = (swaps_ % 2 == 0) ? T(1) : T(-1);
  double acc = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    acc += log_magnitude(lu_(k, k));
    phase *= sign_of(lu_(k, k));
  }
  r.log_abs = acc;
  r.phase = phase;
  r.condition_estimate = condition_estimate();
  return r;
}

template <class T>
std::vector<T> LuFactorization<T>::solve(std::span<const T> b) const {
  const std::size_t n = size();
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) x[i] -= lu_(i, k) * x[k];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) x[i] -= lu_(i, k) * x[k];
    x[i] /= lu_(i, i);
  }
  return x;
}

template <class T>
std::vector<T> LuFactorization<T>::solve_adjoint(std::span<const T> b) const {
  // P A = L U  =>  A^H = U^H L^H P
  const std::size_t n = size();
  std::vector<T> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= conj_of(lu_(k, i)) * y[k];
    y[i] /= conj_of(lu_(i, i));
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= conj_of(lu_(k, i)) * y[k];
  }
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = y[i];
  return x;
}

template <class T>
double LuFactorization<T>::condition_estimate() const {
  const std::size_t n = size();
  if (singular_) return std::numeric_limits<double>::infinity();
  if (n == 0) return 1.0;

  std::vector<T> x(n, T(1.0 / static_cast<double>(n)));
  double est = 0.0;
  std::size_t last = n;
  for (int iter = 0; iter < 5; ++iter) {
    const std::vector<T> y = solve(x);
    est = std::max(est, norm1<T>(y));
    std::vector<T> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = sign_of(y[i]);
    const std::vector<T> z = solve_adjoint(s);
    std::size_t jmax = 0;
    double zmax = -1.0;
    double ztx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double zi = magnitude(z[i]);
      if (zi > zmax) {
        zmax = zi;
        jmax = i;
      }
      ztx += to_complex(conj_of(z[i]) * x[i]).real();
    }
    if (zmax <= ztx || jmax == last) break;
    std::fill(x.begin(), x.end(), T(0));
    x[jmax] = T(1);
    last = jmax;
  }
  // Higham's alternating test vector guards against the estimator's blind spots.
  std::vector<T> alt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = 1.0 + (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0);
    alt[i] = T(i % 2 == 0 ? v : -v);
  }
  const std::vector<T> ya = solve(alt);
  est = std::max(est, 2.0 * norm1<T>(ya) / (3.0 * static_cast<double>(n)));
  return norm1_ * est;
}

template <class T>
DetResult<T> log_abs_det(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("log_abs_det: matrix must be square");
  return LuFactorization<T>(m).determinant();
}

template <class T>
std::vector<T> solve_denominator(const ToeplitzTriple<T>& triple, double condition_cap) {
  const std::size_t n = triple.n;
  if (n == 0) return {T(1)};
  const std::string name = "A_" + std::to_string(triple.m) + "^(" + std::to_string(n) + ")";
  LuFactorization<T> lu(triple.denominator_matrix);
  if (lu.singular()) {
    throw DegenerateSystem("denominator matrix " + name + " is singular");
  }
  const double cond = lu.condition_estimate();
  if (!(cond <= condition_cap)) {
    throw DegenerateSystem("denominator matrix " + name + " is numerically singular (condition " +
                           std::to_string(cond) + ")");
  }
  std::vector<T> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = -triple.order_matrix(i, 0);
  const std::vector<T> tail = lu.solve(rhs);
  std::vector<T> q;
  q.reserve(n + 1);
  q.push_back(T(1));
  q.insert(q.end(), tail.begin(), tail.end());
  return q;
}

#define PADECLUST_INSTANTIATE(T)                                                                    \
  template ToeplitzTriple<T> build_triple<T>(std::span<const T>, std::size_t, std::size_t);        \
  template Matrix<T> square_toeplitz<T>(std::span<const T>, std::size_t, std::size_t);             \
  template class LuFactorization<T>;                                                                \
  template DetResult<T> log_abs_det<T>(const Matrix<T>&);                                           \
  template std::vector<T> solve_denominator<T>(const ToeplitzTriple<T>&, double);

PADECLUST_INSTANTIATE(double)
PADECLUST_INSTANTIATE(std::complex<double>)
PADECLUST_INSTANTIATE(Extended)

#undef PADECLUST_INSTANTIATE

}  // namespace padeclust
