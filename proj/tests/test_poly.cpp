#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "padeclust/errors.hpp"
#include "padeclust/poly.hpp"

using namespace padeclust;

namespace {

ComplexPolynomial real_poly(std::initializer_list<double> c) {
  std::vector<double> v(c);
  return ComplexPolynomial::from_real(v);
}

ComplexPolynomial gaussian_poly(std::mt19937_64& rng, std::size_t degree) {
  std::normal_distribution<double> g;
  std::vector<double> c(degree + 1);
  for (auto& x : c) x = g(rng);
  return ComplexPolynomial::from_real(c);
}

// Independent oracle: eigenvalues of the companion matrix.
std::vector<Complex> companion_roots(const ComplexPolynomial& p) {
  const auto d = static_cast<Eigen::Index>(p.degree());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) m(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) m(i, d - 1) = -p[static_cast<std::size_t>(i)] / p.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + d);
  return out;
}

// Leja-style ordering keeps the partial products of (z - z_j) well scaled.
std::vector<Complex> monic_from_roots(std::vector<Complex> roots) {
  std::vector<Complex> ordered;
  auto it = std::max_element(roots.begin(), roots.end(),
                             [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  ordered.push_back(*it);
  roots.erase(it);
  while (!roots.empty()) {
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      double s = 0.0;
      for (auto& o : ordered) s += std::log(std::abs(roots[i] - o) + 1e-300);
      if (s > best_score || best_score == -1.0) {
        best_score = s;
        best = i;
      }
    }
    ordered.push_back(roots[best]);
    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(best));
  }
  std::vector<Complex> c{1.0};
  for (auto z : ordered) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= z * c[j];
    }
    c = std::move(next);
  }
  return c;
}

double nearest(const std::vector<Complex>& set, Complex z) {
  double best = INFINITY;
  for (auto w : set) best = std::min(best, std::abs(w - z));
  return best;
}

}  // namespace

TEST_CASE("evaluate") {
  CHECK(std::abs(evaluate(real_poly({1, 0, 1}), Complex{0, 1})) == doctest::Approx(0.0));
  CHECK(evaluate(real_poly({1}), Complex{3.7, -2}) == Complex{1.0, 0.0});
  CHECK(evaluate(real_poly({1, 1, 1, 1}), 2.0) == Complex{15.0, 0.0});
  auto p = real_poly({4.5, 3, 2});
  CHECK(p(0.0) == Complex{4.5, 0.0});
}

TEST_CASE("degree uses the relative zero threshold") {
  CHECK(real_poly({1, 2, 1e-14}).degree() == 1);
  CHECK(real_poly({1, 2, 1e-12}).degree() == 2);
  CHECK(real_poly({0, 0}).is_zero());
  CHECK(real_poly({3, 0, 0}).trimmed().size() == 1);
}

TEST_CASE("truncated_product examples") {
  auto r1 = truncated_product(real_poly({1, 1}), real_poly({1, -1}), 2);
  CHECK(r1.coeffs() == std::vector<Complex>{1.0, 0.0, -1.0});
  auto r2 = truncated_product(real_poly({1, 1, 1, 1}), real_poly({1, -1}), 3);
  CHECK(r2.coeffs() == std::vector<Complex>{1.0, 0.0, 0.0, 0.0});
  auto r3 = truncated_product(real_poly({2}), real_poly({3}), 5);
  CHECK(r3.coeffs() == std::vector<Complex>{6.0, 0.0, 0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("truncated_product matches brute-force convolution") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 12);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    std::vector<Complex> a(static_cast<std::size_t>(len(rng))), b(static_cast<std::size_t>(len(rng)));
    for (auto& x : a) x = {g(rng), g(rng)};
    for (auto& x : b) x = {g(rng), g(rng)};
    const std::size_t order = static_cast<std::size_t>(len(rng));
    auto prod = truncated_product(ComplexPolynomial(a), ComplexPolynomial(b), order);
    REQUIRE(prod.size() == order + 1);
    for (std::size_t j = 0; j <= order; ++j) {
      Complex expect = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < b.size(); ++k) {
          if (i + k == j) expect += a[i] * b[k];
        }
      }
      CHECK(std::abs(prod[j] - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    }
  }
}

TEST_CASE("find_roots examples") {
  auto rs = find_roots(real_poly({-1, 0, 1}));
  REQUIRE(rs.size() == 2);
  CHECK(rs.converged);
  CHECK(nearest(rs.roots, 1.0) < 1e-14);
  CHECK(nearest(rs.roots, -1.0) < 1e-14);

  auto r8 = find_roots(real_poly({1, 0, 0, 0, 0, 0, 0, 0, 1}));
  REQUIRE(r8.size() == 8);
  for (auto z : r8.roots) {
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-13);
    CHECK(std::abs(std::pow(z, 8) + 1.0) < 1e-12);
  }
}

TEST_CASE("find_roots splits off exact roots at the origin") {
  auto rs = find_roots(real_poly({0, 0, -4, 0, 1}));
  REQUIRE(rs.size() == 4);
  CHECK(rs.roots[0] == Complex{0.0, 0.0});
  CHECK(rs.roots[1] == Complex{0.0, 0.0});
  CHECK(std::abs(std::abs(rs.roots[3]) - 2.0) < 1e-14);
}

TEST_CASE("find_roots rejects constants") {
  CHECK_THROWS_AS(find_roots(real_poly({2})), DegenerateInput);
  CHECK_THROWS_AS(find_roots(real_poly({0, 0})), DegenerateInput);
}

TEST_CASE("find_roots matches the companion-matrix oracle") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    auto p = gaussian_poly(rng, 10);
    auto rs = find_roots(p);
    auto ref = companion_roots(p);
    REQUIRE(rs.size() == ref.size());
    CHECK(rs.converged);
    for (auto z : rs.roots) CHECK(nearest(ref, z) < 1e-8);
    for (auto z : ref) CHECK(nearest(rs.roots, z) < 1e-8);
  }
}

TEST_CASE("root set is sorted by modulus and residual is small") {
  std::mt19937_64 rng(5);
  auto p = gaussian_poly(rng, 40);
  auto rs = find_roots(p);
  for (std::size_t i = 1; i < rs.size(); ++i) CHECK(std::abs(rs.roots[i - 1]) <= std::abs(rs.roots[i]));
  CHECK(rs.residual <= 1e-10);
}

TEST_CASE("monic reconstruction reproduces the polynomial") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> deg(2, 64);
  for (int t = 0; t < 60; ++t) {
    auto p = gaussian_poly(rng, deg(rng));
    auto rs = find_roots(p);
    auto rec = monic_from_roots(rs.roots);
    REQUIRE(rec.size() == p.degree() + 1);
    double scale = 0.0;
    for (std::size_t j = 0; j <= p.degree(); ++j) scale = std::max(scale, std::abs(p[j] / p.leading()));
    for (std::size_t j = 0; j <= p.degree(); ++j) {
      const Complex target = p[j] / p.leading();
      CHECK(std::abs(rec[j] - target) <= 1e-6 * std::max(std::abs(target), 1e-3 * scale));
    }
  }
}

TEST_CASE("extended precision route agrees with double") {
  std::mt19937_64 rng(7);
  auto p = gaussian_poly(rng, 30);
  auto d = find_roots(p);
  RootOptions opt;
  auto e = find_roots(p, opt);
  CHECK(e.precision_used == Precision::kDouble);
  // force the float128 path by making the double path fail: 1 iteration cap
  RootOptions ext{1e-300, 400, Precision::kExtended};
  auto q = find_roots(p, ext);
  CHECK(q.precision_used == Precision::kExtended);
  for (auto z : q.roots) CHECK(nearest(d.roots, z) < 1e-10);
}

TEST_CASE("non-convergence is reported") {
  std::mt19937_64 rng(8);
  auto p = gaussian_poly(rng, 50);
  CHECK_THROWS_AS(find_roots(p, 1e-300, 1), NonConvergence);
}

TEST_CASE("circle_log_average examples") {
  CHECK(circle_log_average(real_poly({1, -2}), 1.0, 64) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(circle_log_average(real_poly({-3.5}), 2.0, 16) == doctest::Approx(std::log(3.5)));
  CHECK(std::abs(circle_log_average(real_poly({1, 1}), 0.5, 64)) < 1e-12);
  CHECK_THROWS_AS(circle_log_average(real_poly({0, 0}), 1.0, 64), DegenerateInput);
}

TEST_CASE("circle_log_average stays finite with a root on a grid node") {
  // 1 - z has its root at theta = 0, the first node.
  const double v = circle_log_average(real_poly({1, -1}), 1.0, 64);
  CHECK(std::isfinite(v));
  CHECK(std::abs(v) < 0.1);
}

TEST_CASE("jensen_rhs examples") {
  std::vector<Complex> one{0.5};
  CHECK(jensen_rhs(one, 1.0, 1.0) == doctest::Approx(std::log(2.0)));
  std::vector<Complex> outside{2.0};
  CHECK(jensen_rhs(outside, 3.0, 1.0) == doctest::Approx(std::log(3.0)));
  std::vector<Complex> three{0.3, 0.5, 0.9};
  CHECK(jensen_rhs(three, 1.0, 1.0) ==
        doctest::Approx(std::log(1 / 0.3) + std::log(1 / 0.5) + std::log(1 / 0.9)));
  CHECK_THROWS_AS(jensen_rhs(three, 0.0, 1.0), DegenerateInput);
}

TEST_CASE("Jensen identity on random polynomials") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> deg(1, 64);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    auto p = gaussian_poly(rng, deg(rng));
    auto rs = find_roots(p);
    REQUIRE(rs.converged);
    for (double r : {0.5, 0.9, 1.1}) {
      bool clear = true;
      for (auto z : rs.roots) clear = clear && std::abs(std::abs(z) - r) >= 1e-3;
      if (!clear) continue;
      // 8*degree nodes resolve a root 1e-3 away only roughly; use the adaptive rule
      auto avg = circle_log_average_adaptive(p, r, 1e-9);
      CHECK(std::abs(avg.value - jensen_rhs(rs, std::abs(p[0]), r)) <= 1e-6);
      ++checked;
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("large degree random polynomial converges in double") {
  std::mt19937_64 rng(1234);
  auto p = gaussian_poly(rng, 1024);
  auto rs = find_roots(p);
  CHECK(rs.converged);
  CHECK(rs.size() == 1024);
  // Jensen identity at r = 1 as an end-to-end check on all roots
  auto avg = circle_log_average_adaptive(p, 0.97, 1e-10);
  CHECK(std::abs(avg.value - jensen_rhs(rs, std::abs(p[0]), 0.97)) < 1e-6);
}
