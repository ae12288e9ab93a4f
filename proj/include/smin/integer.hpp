#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "smin/linalg.hpp"

namespace smin {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<std::int64_t>;

/// Overflow-checked 64-bit arithmetic; throw Errc::transform_overflow.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
/// Nearest integer to x (ties away from zero); throws if it does not fit.
std::int64_t checked_round(double x);

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::span<const IntVector> cols);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const std::int64_t> data() const noexcept { return data_; }
  IntVector column(std::size_t j) const;

  /// Real copy, for multiplying against bases.
  Matrix to_real() const;

  /// Overflow-checked product.
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt exact_det(const IntMatrix& m);

/// Exact rank over the rationals.
std::size_t exact_rank(const IntMatrix& m);

/// Square integer matrix with |det| = 1. Only unimodular column operations
/// are exposed, so the invariant holds by construction.
class UnimodularTransform {
 public:
  UnimodularTransform() = default;
  explicit UnimodularTransform(std::size_t n) : z_(IntMatrix::identity(n)) {}
  /// Verifies |det m| = 1 exactly; throws precondition_violated otherwise.
  static UnimodularTransform from_matrix(IntMatrix m);

  std::size_t dim() const noexcept { return z_.rows(); }
  const IntMatrix& matrix() const noexcept { return z_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return z_(i, j); }

  void swap_columns(std::size_t a, std::size_t b);
  /// column[dst] -= q * column[src]
  void subtract_multiple(std::size_t dst, std::size_t src, std::int64_t q);

  /// this * rhs
  UnimodularTransform then(const UnimodularTransform& rhs) const;

  friend bool operator==(const UnimodularTransform&, const UnimodularTransform&) = default;

 private:
  IntMatrix z_;
};

/// Incremental rational-independence test over integer vectors, using
/// fraction-free elimination against the vectors accepted so far.
class IndependenceTracker {
 public:
  explicit IndependenceTracker(std::size_t dim) : dim_(dim) {}

  /// Adds v if it is independent of the accepted set; returns whether it was.
  bool try_add(std::span<const std::int64_t> v);
  std::size_t rank() const noexcept { return rows_.size(); }

 private:
  struct Row {
    std::vector<BigInt> entries;
    std::size_t pivot;
  };
  std::size_t dim_;
  std::vector<Row> rows_;
};

/// B * x for an integer vector x.
std::vector<double> lattice_vector(const Matrix& basis, std::span<const std::int64_t> x);
/// Euclidean norm of B * x.
double lattice_norm(const Matrix& basis, std::span<const std::int64_t> x);

}  // namespace smin
