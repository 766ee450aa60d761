#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "padeclust/extended.hpp"

namespace padeclust {

/// Dense row-major matrix, sized at construction.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Condition caps above which a denominator solve is declared degenerate.
inline constexpr double kConditionCapDouble = 1e12;
inline constexpr double kConditionCapExtended = 1e28;

/// The three coefficient matrices of the [m,n] Pade problem, with a_l = 0 for l < 0:
///   numerator_matrix   (m+1) x (n+1), entry (i,j) = a_{i-j}       maps q to p
///   order_matrix        n    x (n+1), entry (i,j) = a_{m+1+i-j}   order conditions, T q = 0
///   denominator_matrix  n    x  n,    entry (i,j) = a_{m+i-j}     columns 1..n of order_matrix
template <class T>
struct ToeplitzTriple {
  std::size_t m = 0;
  std::size_t n = 0;
  Matrix<T> numerator_matrix;
  Matrix<T> order_matrix;
  Matrix<T> denominator_matrix;
};

/// Throws InsufficientCoefficients when coeffs.size() < m+n+1.
template <class T>
ToeplitzTriple<T> build_triple(std::span<const T> coeffs, std::size_t m, std::size_t n);

/// The size x size matrix with entry (i,j) = a_{m+i-j}; needs m+size coefficients.
template <class T>
Matrix<T> square_toeplitz(std::span<const T> coeffs, std::size_t m, std::size_t size);

template <class T>
struct DetResult {
  double log_abs = 0.0;  // -inf when singular
  T phase = T(1);        // det / |det|
  bool singular = false;
  double condition_estimate = 1.0;  // 1-norm estimate, +inf when singular
};

/// Partially pivoted LU factorization.
template <class T>
class LuFactorization {
 public:
  explicit LuFactorization(Matrix<T> a);

  std::size_t size() const noexcept { return lu_.rows(); }
  bool singular() const noexcept { return singular_; }
  DetResult<T> determinant() const;

  std::vector<T> solve(std::span<const T> b) const;
  /// Solves A^H x = b.
  std::vector<T> solve_adjoint(std::span<const T> b) const;

  /// Hager-Higham estimate of ||A||_1 * ||A^{-1}||_1.
  double condition_estimate() const;

 private:
  Matrix<T> lu_;
  std::vector<std::size_t> perm_;
  int swaps_ = 0;
  bool singular_ = false;
  double norm1_ = 0.0;
};

template <class T>
DetResult<T> log_abs_det(const Matrix<T>& m);

/// q with q_0 = 1 solving order_matrix * q = 0 through the denominator system.
/// Throws DegenerateSystem if the system is singular or its condition exceeds cap.
template <class T>
std::vector<T> solve_denominator(const ToeplitzTriple<T>& triple,
                                 double condition_cap = kConditionCapDouble);

}  // namespace padeclust
