#include "smin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace smin {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::dimension_mismatch, std::string(what) + ": shapes differ");
  }
}

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square() || m.empty()) throw Error(Errc::non_square, what);
}

double max_diagonal(const Matrix& g) {
  double d = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) d = std::max(d, g(i, i));
  return d;
}

// Upper Cholesky of a square matrix read from its upper triangle. Pivots must
// strictly exceed `floor`. Returns false on failure.
bool try_cholesky(const Matrix& g, double floor, Matrix& r) {
  const std::size_t n = g.rows();
  r = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = g(j, j);
    for (std::size_t k = 0; k < j; ++k) s -= r(k, j) * r(k, j);
    if (!(s > floor)) return false;
    const double rjj = std::sqrt(s);
    r(j, j) = rjj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double t = g(j, i);
      for (std::size_t k = 0; k < j; ++k) t -= r(k, j) * r(k, i);
      r(j, i) = t / rjj;
    }
  }
  return true;
}

bool is_symmetric(const Matrix& m) {
  const double scale = std::max(m.max_abs(), 1e-300);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol::sym * scale) return false;
    }
  }
  return true;
}

Matrix symmetric_part(const Matrix& m) {
  Matrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) throw Error(Errc::invalid_argument, "matrix dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) throw Error(Errc::invalid_argument, "matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw Error(Errc::dimension_mismatch, "entry count does not match rows*cols");
  }
  if (!all_finite()) throw Error(Errc::non_finite, "matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  if (!m.all_finite()) throw Error(Errc::non_finite, "matrix entries must be finite");
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(Errc::dimension_mismatch, "ragged row list");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::column_norm(std::size_t j) const {
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::dimension_mismatch, "matrix product: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

// ------------------------------------------------------------ SpdMatrix

SpdMatrix::SpdMatrix(const Matrix& m, Definiteness kind) : kind_(kind) {
  require_square(m, "SPD matrix must be square");
  if (!m.all_finite()) throw Error(Errc::non_finite, "SPD matrix entries must be finite");
  if (!is_symmetric(m)) throw Error(Errc::precondition_violated, "matrix is not symmetric");
  m_ = symmetric_part(m);
  if (!is_spd(m_, kind)) {
    throw Error(Errc::not_positive_definite,
                kind == Definiteness::strict ? "matrix is not positive definite"
                                             : "matrix is not positive semidefinite");
  }
}

// ------------------------------------------------------- UpperTriangular

UpperTriangular::UpperTriangular(Matrix m) : m_(std::move(m)) {
  require_square(m_, "triangular factor must be square");
  if (!m_.all_finite()) throw Error(Errc::non_finite, "factor entries must be finite");
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (m_(i, j) != 0.0) throw Error(Errc::not_upper_triangular, "nonzero entry below the diagonal");
    }
    if (!(m_(i, i) > 0.0)) throw Error(Errc::not_upper_triangular, "diagonal entries must be positive");
  }
}

std::vector<double> UpperTriangular::diagonal() const {
  std::vector<double> d(dim());
  for (std::size_t i = 0; i < dim(); ++i) d[i] = m_(i, i);
  return d;
}

Matrix UpperTriangular::gram() const { return m_.transpose() * m_; }

// ------------------------------------------------------------- kernels

UpperTriangular cholesky(const SpdMatrix& g) {
  Matrix r;
  const double floor = tol::pivot * max_diagonal(g.matrix());
  if (!try_cholesky(g.matrix(), floor, r)) {
    throw Error(Errc::not_positive_definite, "Cholesky pivot below tolerance");
  }
  return UpperTriangular(std::move(r));
}

bool is_spd(const Matrix& m, Definiteness kind) {
  require_square(m, "is_spd requires a square matrix");
  if (!m.all_finite() || !is_symmetric(m)) return false;
  const Matrix s = symmetric_part(m);
  const double dmax = max_diagonal(s);
  Matrix r;
  if (kind == Definiteness::strict) {
    return dmax > 0.0 && try_cholesky(s, tol::pivot * dmax, r);
  }
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (s(i, i) < 0.0) return false;
  }
  if (dmax == 0.0) return s.max_abs() == 0.0;
  Matrix shifted = s;
  for (std::size_t i = 0; i < s.rows(); ++i) shifted(i, i) += tol::pivot * dmax;
  return try_cholesky(shifted, 0.0, r);
}

Matrix cholesky_solve(const UpperTriangular& r, const Matrix& b) {
  const std::size_t n = r.dim();
  if (b.rows() != n) throw Error(Errc::dimension_mismatch, "cholesky_solve: row count differs");
  Matrix x = b;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    // R^T y = b
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= r(k, i) * x(k, c);
      x(i, c) = s / r(i, i);
    }
    // R x = y
    for (std::size_t i = n; i-- > 0;) {
      double s = x(i, c);
      for (std::size_t k = i + 1; k < n; ++k) s -= r(i, k) * x(k, c);
      x(i, c) = s / r(i, i);
    }
  }
  return x;
}

SpdMatrix inverse(const SpdMatrix& g) {
  const UpperTriangular r = cholesky(g);
  return SpdMatrix(cholesky_solve(r, Matrix::identity(g.dim())));
}

UpperTriangular qr_r_factor(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) throw Error(Errc::rank_deficient, "QR needs at least as many rows as columns");
  Matrix w = a;
  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, a.column_norm(j));
  std::vector<double> v(m);
  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += w(i, k) * w(i, k);
    norm = std::sqrt(norm);
    if (norm <= 1e-14 * scale) throw Error(Errc::rank_deficient, "matrix is not full column rank");
    const double alpha = w(k, k) > 0.0 ? -norm : norm;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      v[i] = w(i, k) - (i == k ? alpha : 0.0);
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 > 0.0) {
      for (std::size_t j = k; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += v[i] * w(i, j);
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < m; ++i) w(i, j) -= f * v[i];
      }
    }
  }
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = w(i, i) < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = i; j < n; ++j) r(i, j) = sign * w(i, j);
  }
  return UpperTriangular(std::move(r));
}

double det(const Matrix& m) {
  require_square(m, "det requires a square matrix");
  const std::size_t n = m.rows();
  Matrix lu = m;
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (lu(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      d = -d;
    }
    d *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return d;
}

double det(const UpperTriangular& r) {
  double d = 1.0;
  for (std::size_t i = 0; i < r.dim(); ++i) d *= r(i, i);
  return d;
}

double log_abs_det(const UpperTriangular& r) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.dim(); ++i) s += std::log(r(i, i));
  return s;
}

std::pair<SpdMatrix, SpdMatrix> woodbury_decompose(const SpdMatrix& g1, const SpdMatrix& g2) {
  if (g1.dim() != g2.dim()) throw Error(Errc::dimension_mismatch, "woodbury_decompose: dimensions differ");
  if (g1.definiteness() != Definiteness::strict || g2.definiteness() != Definiteness::strict) {
    // re-validate as strict; throws not_positive_definite for singular input
    return woodbury_decompose(SpdMatrix(g1.matrix()), SpdMatrix(g2.matrix()));
  }
  const SpdMatrix g1_inv = inverse(g1);
  const SpdMatrix g2_inv = inverse(g2);
  SpdMatrix sum_inv = inverse(SpdMatrix(g1.matrix() + g2.matrix()));
  const SpdMatrix middle = inverse(SpdMatrix(g1_inv.matrix() + g2_inv.matrix()));
  SpdMatrix rest(g1_inv.matrix() * middle.matrix() * g1_inv.matrix());
  return {std::move(sum_inv), std::move(rest)};
}

}  // namespace smin
