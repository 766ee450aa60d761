#include <algorithm>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "padeclust/errors.hpp"
#include "padeclust/poly.hpp"

namespace padeclust {

namespace {

using boost::multiprecision::complex128;
using boost::multiprecision::float128;

template <class R>
struct Field;

template <>
struct Field<double> {
  using C = std::complex<double>;
  static double eps() { return std::numeric_limits<double>::epsilon(); }
  static C from(Complex z) { return z; }
  static Complex to(const C& z) { return z; }
};

template <>
struct Field<float128> {
  using C = complex128;
  static float128 eps() { return std::numeric_limits<float128>::epsilon(); }
  static C from(Complex z) { return C(float128(z.real()), float128(z.imag())); }
  static Complex to(const C& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
  }
};

// Initial approximations from the upper convex hull of (j, log|a_j|): each hull
// edge of width k contributes k points on the circle whose radius is the
// coefficient ratio of its endpoints.
std::vector<Complex> newton_polygon_start(const std::vector<Complex>& a) {
  const std::size_t d = a.size() - 1;
  std::vector<std::size_t> idx;
  std::vector<double> lg;
  for (std::size_t j = 0; j <= d; ++j) {
    if (std::abs(a[j]) > 0.0) {
      idx.push_back(j);
      lg.push_back(std::log(std::abs(a[j])));
    }
  }
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    while (hull.size() >= 2) {
      const std::size_t i1 = hull[hull.size() - 2];
      const std::size_t i2 = hull.back();
      const double x1 = static_cast<double>(idx[i1]), y1 = lg[i1];
      const double x2 = static_cast<double>(idx[i2]), y2 = lg[i2];
      const double x3 = static_cast<double>(idx[k]), y3 = lg[k];
      // drop i2 unless it lies strictly above the chord i1 -> k
      if ((x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1) >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }

  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Complex> z;
  z.reserve(d);
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const std::size_t j0 = idx[hull[s]];
    const std::size_t j1 = idx[hull[s + 1]];
    const std::size_t count = j1 - j0;
    const double radius = std::exp((lg[hull[s]] - lg[hull[s + 1]]) / static_cast<double>(count));
    const double phase = 0.4 + golden * static_cast<double>(s);
    for (std::size_t k = 0; k < count; ++k) {
      const double theta =
          2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count) + phase;
      z.push_back(std::polar(radius, theta));
    }
  }
  return z;
}

template <class R>
struct AberthResult {
  std::vector<Complex> roots;
  double residual = 0.0;
  bool all_stopped = false;
  int iterations = 0;
};

// a[0] != 0 and a[d] != 0.
template <class R>
AberthResult<R> aberth(const std::vector<Complex>& coeffs, int max_iter) {
  using C = typename Field<R>::C;
  using std::abs;
  using std::log;
  using std::exp;

  const std::size_t d = coeffs.size() - 1;
  std::vector<C> a(d + 1);
  std::vector<R> abs_a(d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    a[j] = Field<R>::from(coeffs[j]);
    abs_a[j] = abs(a[j]);
  }
  const R noise = R(4) * R(static_cast<double>(d + 1)) * Field<R>::eps();
  const R step_floor = R(4) * Field<R>::eps();
  const R one(1);
  const R deg(static_cast<double>(d));

  // Returns p'(z)/p(z); sets stop when |p(z)| is at rounding level.
  auto log_derivative = [&](const C& z, bool& stop) -> C {
    const R mz = abs(z);
    C v(0), dv(0);
    R bound(0);
    if (mz <= one) {
      for (std::size_t j = d + 1; j-- > 0;) {
        dv = dv * z + v;
        v = v * z + a[j];
        bound = bound * mz + abs_a[j];
      }
      stop = abs(v) <= noise * bound;
      return stop ? C(0) : dv / v;
    }
    const C w = C(one) / z;
    const R mw = one / mz;
    for (std::size_t j = 0; j <= d; ++j) {
      dv = dv * w + v;
      v = v * w + a[j];
      bound = bound * mw + abs_a[j];
    }
    stop = abs(v) <= noise * bound;
    return stop ? C(0) : w * (C(deg) * v - w * dv) / v;
  };

  const std::vector<Complex> start = newton_polygon_start(coeffs);
  std::vector<C> z(d);
  for (std::size_t i = 0; i < d; ++i) z[i] = Field<R>::from(start[i]);
  std::vector<char> done(d, 0);

  AberthResult<R> out;
  int it = 0;
  bool all_done = false;
  while (it < max_iter && !all_done) {
    ++it;
    all_done = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      bool stop = false;
      const C inv_newton = log_derivative(z[i], stop);
      if (stop) {
        done[i] = 1;
        continue;
      }
      C repulsion(0);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        const C diff = z[i] - z[j];
        if (abs(diff) > R(0)) repulsion += C(one) / diff;
      }
      const C denom = inv_newton - repulsion;
      if (abs(denom) == R(0)) continue;
      const C step = C(one) / denom;
      z[i] -= step;
      if (abs(step) <= step_floor * abs(z[i])) done[i] = 1;
      all_done = false;
    }
  }
  out.iterations = it;
  out.all_stopped = all_done;

  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const R mz = abs(z[i]);
    C v(0);
    R lp;
    if (mz <= one) {
      for (std::size_t j = d + 1; j-- > 0;) v = v * z[i] + a[j];
      lp = log(abs(v));
    } else {
      const C w = C(one) / z[i];
      for (std::size_t j = 0; j <= d; ++j) v = v * w + a[j];
      lp = deg * log(mz) + log(abs(v));
    }
    const R lr = lp - deg * log(one + mz);
    const double res = static_cast<double>(exp(lr));
    if (std::isfinite(res)) worst = std::max(worst, res);
    out.roots.push_back(Field<R>::to(z[i]));
  }
  out.residual = worst;
  return out;
}

void sort_by_modulus(std::vector<Complex>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
    const double mx = std::abs(x), my = std::abs(y);
    if (mx != my) return mx < my;
    return std::arg(x) < std::arg(y);
  });
}

template <class R>
RootSet run(const std::vector<Complex>& core, std::size_t origin_roots, const RootOptions& opt,
            Precision tag) {
  RootSet rs;
  rs.precision_used = tag;
  rs.roots.assign(origin_roots, Complex{0.0, 0.0});
  if (core.size() >= 2) {
    AberthResult<R> ab = aberth<R>(core, opt.max_iter);
    if (!ab.all_stopped && ab.residual > opt.tol) {
      throw NonConvergence("find_roots: no convergence after " + std::to_string(ab.iterations) +
                           " iterations (residual " + std::to_string(ab.residual) + ")");
    }
    rs.iterations = ab.iterations;
    rs.residual = ab.residual;
    rs.converged = ab.all_stopped && ab.residual <= opt.tol;
    rs.roots.insert(rs.roots.end(), ab.roots.begin(), ab.roots.end());
  } else {
    rs.converged = true;
  }
  sort_by_modulus(rs.roots);
  return rs;
}

}  // namespace

RootSet find_roots(const ComplexPolynomial& p, const RootOptions& options) {
  if (p.is_zero() || p.degree() == 0) {
    throw DegenerateInput("find_roots: polynomial must have degree >= 1");
  }
  const auto& c = p.coeffs();
  const std::size_t d = p.degree();
  std::size_t origin = 0;
  while (origin < d && c[origin] == Complex{0.0, 0.0}) ++origin;
  std::vector<Complex> core(c.begin() + static_cast<std::ptrdiff_t>(origin),
                            c.begin() + static_cast<std::ptrdiff_t>(d) + 1);

  if (options.precision == Precision::kDouble) {
    return run<double>(core, origin, options, Precision::kDouble);
  }
  try {
    RootSet rs = run<double>(core, origin, options, Precision::kDouble);
    if (rs.converged) return rs;
  } catch (const NonConvergence&) {
  }
  return run<float128>(core, origin, options, Precision::kExtended);
}

RootSet find_roots(const ComplexPolynomial& p, double tol, int max_iter) {
  return find_roots(p, RootOptions{tol, max_iter, Precision::kDouble});
}

}  // namespace padeclust
