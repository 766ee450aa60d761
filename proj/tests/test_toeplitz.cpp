#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "padeclust/errors.hpp"
#include "padeclust/toeplitz.hpp"

using namespace padeclust;

namespace {

// Brute-force Laplace expansion along the first row.
double cofactor_det(const Matrix<double>& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix<double> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, jj++) = a(i, j);
      }
    }
    det += ((c % 2 == 0) ? 1.0 : -1.0) * a(0, c) * cofactor_det(minor);
  }
  return det;
}

std::vector<double> gaussian(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

}  // namespace

TEST_CASE("build_triple [1,1] layout") {
  const std::vector<double> a{2.0, 3.0, 5.0};
  auto t = build_triple<double>(a, 1, 1);
  CHECK(t.denominator_matrix.rows() == 1);
  CHECK(t.denominator_matrix(0, 0) == 3.0);
  CHECK(t.order_matrix.rows() == 1);
  CHECK(t.order_matrix.cols() == 2);
  CHECK(t.order_matrix(0, 0) == 5.0);
  CHECK(t.order_matrix(0, 1) == 3.0);
  CHECK(t.numerator_matrix(0, 0) == 2.0);
  CHECK(t.numerator_matrix(0, 1) == 0.0);
  CHECK(t.numerator_matrix(1, 0) == 3.0);
  CHECK(t.numerator_matrix(1, 1) == 2.0);
}

TEST_CASE("build_triple pads negative indices with zero") {
  const std::vector<double> a{2.0, 3.0, 5.0, 7.0};
  auto t = build_triple<double>(a, 0, 2);
  CHECK(t.denominator_matrix(0, 0) == 2.0);
  CHECK(t.denominator_matrix(0, 1) == 0.0);
  CHECK(t.denominator_matrix(1, 0) == 3.0);
  CHECK(t.denominator_matrix(1, 1) == 2.0);
}

TEST_CASE("build_triple with empty denominator") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  auto t = build_triple<double>(a, 2, 0);
  CHECK(t.denominator_matrix.rows() == 0);
  CHECK(t.order_matrix.rows() == 0);
  CHECK(t.order_matrix.cols() == 1);
  CHECK(t.numerator_matrix.rows() == 3);
  CHECK(t.numerator_matrix.cols() == 1);
  CHECK_THROWS_AS(build_triple<double>(a, 2, 1), InsufficientCoefficients);
}

TEST_CASE("triple index invariants on random inputs") {
  std::mt19937_64 rng(3);
  for (std::size_t m = 0; m < 9; ++m) {
    for (std::size_t n = 0; n < 9; ++n) {
      auto a = gaussian(rng, m + n + 1);
      auto t = build_triple<double>(a, m, n);
      auto at = [&](long l) { return l < 0 ? 0.0 : a[static_cast<std::size_t>(l)]; };
      for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 0; j <= n; ++j)
          CHECK(t.numerator_matrix(i, j) == at(static_cast<long>(i) - static_cast<long>(j)));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= n; ++j)
          CHECK(t.order_matrix(i, j) == at(static_cast<long>(m + 1 + i) - static_cast<long>(j)));
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(t.denominator_matrix(i, j) == t.order_matrix(i, j + 1));
          CHECK(t.denominator_matrix(i, j) == at(static_cast<long>(m + i) - static_cast<long>(j)));
        }
      }
      CHECK(square_toeplitz<double>(a, m, n) == t.denominator_matrix);
    }
  }
}

TEST_CASE("log_abs_det examples") {
  Matrix<double> id(5, 5);
  for (std::size_t i = 0; i < 5; ++i) id(i, i) = 1.0;
  auto r = log_abs_det(id);
  CHECK(r.log_abs == 0.0);
  CHECK(r.phase == 1.0);
  CHECK_FALSE(r.singular);

  Matrix<double> d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  CHECK(log_abs_det(d).log_abs == doctest::Approx(std::log(6.0)));

  auto empty = log_abs_det(Matrix<double>(0, 0));
  CHECK(empty.log_abs == 0.0);
  CHECK_FALSE(empty.singular);

  Matrix<double> s(2, 2);
  s(0, 0) = 1.0;
  s(0, 1) = 2.0;
  s(1, 0) = 2.0;
  s(1, 1) = 4.0;
  auto rs = log_abs_det(s);
  CHECK(rs.singular);
  CHECK(std::isinf(rs.log_abs));
}

TEST_CASE("log_abs_det matches cofactor expansion on random 4x4") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    Matrix<double> a(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = g(rng);
    const double ref = cofactor_det(a);
    auto r = log_abs_det(a);
    CHECK(std::abs(r.phase * std::exp(r.log_abs) - ref) <= 1e-10 * std::abs(ref));
  }
}

TEST_CASE("log_abs_det matches cofactor expansion on small integer matrices") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = size(rng);
    Matrix<double> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
    const double ref = cofactor_det(a);
    auto r = log_abs_det(a);
    if (ref == 0.0) {
      // exact integer arithmetic may still leave a rounding-level pivot
      CHECK((r.singular || std::exp(r.log_abs) < 1e-12));
    } else {
      REQUIRE_FALSE(r.singular);
      CHECK(std::abs(r.phase * std::exp(r.log_abs) - ref) <= 1e-10 * std::abs(ref));
    }
  }
}

TEST_CASE("condition estimate is within a small factor of the true 1-norm condition") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 10);
    Matrix<double> a(n, n);
    Eigen::MatrixXd e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j) = g(rng);
    const double exact = e.cwiseAbs().colwise().sum().maxCoeff() *
                         e.inverse().cwiseAbs().colwise().sum().maxCoeff();
    const double est = LuFactorization<double>(a).condition_estimate();
    CHECK(est <= exact * (1 + 1e-10));
    CHECK(est >= exact / 10.0);
  }
}

TEST_CASE("solve_denominator examples") {
  const std::vector<double> geo{1, 1, 1, 1};
  auto q = solve_denominator(build_triple<double>(geo, 1, 1));
  REQUIRE(q.size() == 2);
  CHECK(q[0] == 1.0);
  CHECK(q[1] == doctest::Approx(-1.0));

  const std::vector<double> ex{1, 1, 0.5, 1.0 / 6.0};
  auto qe = solve_denominator(build_triple<double>(ex, 1, 1));
  CHECK(qe[1] == doctest::Approx(-0.5));

  const std::vector<double> bad{1, 0, 1, 1};
  CHECK_THROWS_AS(solve_denominator(build_triple<double>(bad, 1, 1)), DegenerateSystem);
}

TEST_CASE("solve_denominator residual of the order system") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 300; ++t) {
    const std::size_t m = static_cast<std::size_t>(t % 30);
    const std::size_t n = 1 + static_cast<std::size_t>(t % 12);
    auto a = gaussian(rng, m + n + 1);
    auto tri = build_triple<double>(a, m, n);
    std::vector<double> q;
    try {
      q = solve_denominator(tri);
    } catch (const DegenerateSystem&) {
      continue;
    }
    CHECK(q[0] == 1.0);
    double amax = 0.0, q1 = 0.0;
    for (double x : a) amax = std::max(amax, std::abs(x));
    for (double x : q) q1 += std::abs(x);
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j <= n; ++j) r += tri.order_matrix(i, j) * q[j];
      CHECK(std::abs(r) <= 1e-10 * (1.0 + amax * q1));
    }
  }
}

TEST_CASE("complex and extended scalars") {
  const std::vector<std::complex<double>> c{{1, 1}, {2, 0}, {0, 3}, {1, -1}};
  auto qc = solve_denominator(build_triple<std::complex<double>>(c, 1, 1));
  // a1 q1 = -a2
  CHECK(std::abs(qc[1] - std::complex<double>(0, -1.5)) < 1e-15);

  const std::vector<Extended> e{Extended(1), Extended(1), Extended(1) / 2, Extended(1) / 6};
  auto qe = solve_denominator(build_triple<Extended>(e, 1, 1), kConditionCapExtended);
  CHECK(abs(qe[1] + Extended(1) / 2) < Extended(1e-30));

  Matrix<std::complex<double>> m(2, 2);
  m(0, 0) = {0, 1};
  m(1, 1) = {0, 1};
  auto d = log_abs_det(m);
  CHECK(d.log_abs == doctest::Approx(0.0));
  CHECK(std::abs(d.phase - std::complex<double>(-1, 0)) < 1e-15);
}
