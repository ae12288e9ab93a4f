#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "smin/error.hpp"

namespace smin {

/// Numerical tolerances shared by the dense kernels.
namespace tol {
/// Relative symmetry tolerance, scaled by the largest entry magnitude.
inline constexpr double sym = 1e-10;
/// Cholesky pivots must exceed this times the largest diagonal entry.
inline constexpr double pivot = 1e-12;
/// Relative reconstruction tolerance for factorizations and identities.
inline constexpr double fact = 1e-9;
}  // namespace tol

/// Dense row-major real matrix. Every entry is finite.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  std::vector<double> column(std::size_t j) const;
  double max_abs() const noexcept;
  double column_norm(std::size_t j) const;
  bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(Matrix m, double s) { return m *= s; }
  friend Matrix operator*(double s, Matrix m) { return m *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Largest |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Whether to accept positive semidefinite input.
enum class Definiteness { strict, semi };

/// Symmetric positive (semi)definite matrix. Construction validates the
/// symmetry tolerance and definiteness, then stores the exact symmetric part.
class SpdMatrix {
 public:
  explicit SpdMatrix(const Matrix& m, Definiteness kind = Definiteness::strict);

  std::size_t dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  Definiteness definiteness() const noexcept { return kind_; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  Matrix m_;
  Definiteness kind_;
};

/// Upper-triangular factor with a strictly positive diagonal; the columns
/// form a lattice basis.
class UpperTriangular {
 public:
  explicit UpperTriangular(Matrix m);

  std::size_t dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  std::vector<double> diagonal() const;
  /// Gram matrix R^T R.
  Matrix gram() const;

 private:
  Matrix m_;
};

/// Upper Cholesky factor R with R^T R = G. Throws not_positive_definite when a
/// pivot falls below tol::pivot times the largest diagonal entry.
UpperTriangular cholesky(const SpdMatrix& g);

/// True iff m is symmetric within tol::sym and (strict) Cholesky succeeds on
/// m, or (semi) Cholesky succeeds on m + pivot_tol * I.
bool is_spd(const Matrix& m, Definiteness kind = Definiteness::strict);

/// Solves R^T R X = B for X.
Matrix cholesky_solve(const UpperTriangular& r, const Matrix& b);

/// Inverse of a strictly SPD matrix through Cholesky solves.
SpdMatrix inverse(const SpdMatrix& g);

/// R factor (positive diagonal) of the QR factorization of a full column
/// rank matrix, computed with Householder reflections.
UpperTriangular qr_r_factor(const Matrix& a);

/// Determinant via partial-pivot LU.
double det(const Matrix& m);
/// Product of the diagonal entries.
double det(const UpperTriangular& r);
/// log|det R| as a sum of logs; stays finite where det(R) would overflow.
double log_abs_det(const UpperTriangular& r);

/// Splits G1^{-1} into (G1 + G2)^{-1} plus G1^{-1}(G1^{-1} + G2^{-1})^{-1}G1^{-1}.
/// Both parts are returned as strictly SPD matrices.
std::pair<SpdMatrix, SpdMatrix> woodbury_decompose(const SpdMatrix& g1, const SpdMatrix& g2);

}  // namespace smin
