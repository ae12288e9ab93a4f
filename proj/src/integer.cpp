#include "smin/integer.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace smin {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::transform_overflow, "integer addition overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::transform_overflow, "integer multiplication overflow");
  return r;
}

std::int64_t checked_round(double x) {
  const double r = std::round(x);
  // 2^63 is exactly representable; anything at or beyond it does not fit.
  constexpr double limit = 9223372036854775808.0;
  if (!(r > -limit && r < limit)) throw Error(Errc::transform_overflow, "rounded coefficient exceeds 64 bits");
  return static_cast<std::int64_t>(r);
}

// ------------------------------------------------------------ IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw Error(Errc::dimension_mismatch, "entry count does not match rows*cols");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const IntVector> cols) {
  if (cols.empty()) return {};
  IntMatrix m(cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.rows()) throw Error(Errc::dimension_mismatch, "ragged column list");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<std::int64_t> data;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(Errc::dimension_mismatch, "ragged row list");
    data.insert(data.end(), row.begin(), row.end());
  }
  return IntMatrix(r, c, std::move(data));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix IntMatrix::to_real() const {
  std::vector<double> d(data_.begin(), data_.end());
  return Matrix(rows_, cols_, std::move(d));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::dimension_mismatch, "integer product: inner dimensions differ");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
    }
  return c;
}

BigInt exact_det(const IntMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw Error(Errc::non_square, "exact_det requires a square matrix");
  const std::size_t n = m.rows();
  std::vector<BigInt> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * n + j]; };

  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

std::size_t exact_rank(const IntMatrix& m) {
  IndependenceTracker t(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const IntVector c = m.column(j);
    t.try_add(c);
  }
  return t.rank();
}

// ---------------------------------------------------- UnimodularTransform

UnimodularTransform UnimodularTransform::from_matrix(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error(Errc::non_square, "unimodular transform must be square");
  const BigInt d = exact_det(m);
  if (d != 1 && d != -1) throw Error(Errc::precondition_violated, "matrix is not unimodular");
  UnimodularTransform u;
  u.z_ = std::move(m);
  return u;
}

void UnimodularTransform::swap_columns(std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < z_.rows(); ++i) std::swap(z_(i, a), z_(i, b));
}

void UnimodularTransform::subtract_multiple(std::size_t dst, std::size_t src, std::int64_t q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < z_.rows(); ++i) {
    z_(i, dst) = checked_add(z_(i, dst), checked_mul(-q, z_(i, src)));
  }
}

UnimodularTransform UnimodularTransform::then(const UnimodularTransform& rhs) const {
  UnimodularTransform u;
  u.z_ = z_ * rhs.z_;
  return u;
}

// --------------------------------------------------- IndependenceTracker

bool IndependenceTracker::try_add(std::span<const std::int64_t> v) {
  if (v.size() != dim_) throw Error(Errc::dimension_mismatch, "vector length differs from tracker dimension");
  std::vector<BigInt> w(v.begin(), v.end());
  for (const Row& row : rows_) {
    const BigInt& wp = w[row.pivot];
    if (wp == 0) continue;
    const BigInt rp = row.entries[row.pivot];
    const BigInt f = wp;
    for (std::size_t k = 0; k < dim_; ++k) w[k] = w[k] * rp - f * row.entries[k];
  }
  std::size_t pivot = dim_;
  BigInt g = 0;
  for (std::size_t k = 0; k < dim_; ++k) {
    if (w[k] != 0) {
      if (pivot == dim_) pivot = k;
      g = boost::multiprecision::gcd(g, w[k]);
    }
  }
  if (pivot == dim_) return false;
  for (auto& e : w) e /= g;
  rows_.push_back({std::move(w), pivot});
  return true;
}

std::vector<double> lattice_vector(const Matrix& basis, std::span<const std::int64_t> x) {
  if (x.size() != basis.cols()) throw Error(Errc::dimension_mismatch, "coefficient vector length differs from basis");
  std::vector<double> y(basis.rows(), 0.0);
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    if (x[j] == 0) continue;
    const double c = static_cast<double>(x[j]);
    for (std::size_t i = 0; i < basis.rows(); ++i) y[i] += basis(i, j) * c;
  }
  return y;
}

double lattice_norm(const Matrix& basis, std::span<const std::int64_t> x) {
  double s = 0.0;
  for (double v : lattice_vector(basis, x)) s += v * v;
  return std::sqrt(s);
}

}  // namespace smin
