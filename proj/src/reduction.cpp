#include "smin/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace smin {

namespace {

constexpr long max_reduction_steps = 50'000'000;

void check_delta(double delta) {
  if (!(delta > 0.25 && delta <= 1.0)) {
    throw Error(Errc::invalid_delta, "delta must lie in (1/4, 1], got " + std::to_string(delta));
  }
}

// Working state shared by the reduction loops. `r` is upper triangular.
struct Work {
  Matrix r;
  UnimodularTransform z;
  std::size_t n;

  explicit Work(const UpperTriangular& basis) : r(basis.matrix()), z(basis.dim()), n(basis.dim()) {}

  // Subtracts q * column j from column k (j < k).
  void subtract(std::size_t k, std::size_t j, std::int64_t q) {
    if (q == 0) return;
    const double qd = static_cast<double>(q);
    for (std::size_t i = 0; i <= j; ++i) r(i, k) -= qd * r(i, j);
    z.subtract_multiple(k, j, q);
  }

  // Rounding quotient for reducing r(j,k) against r(j,j); zero when already
  // within half of r(j,j).
  std::int64_t quotient(std::size_t k, std::size_t j) const {
    const double mu = r(j, k) / r(j, j);
    if (std::abs(mu) <= 0.5) return 0;
    return checked_round(mu);
  }

  void size_reduce_entry(std::size_t k, std::size_t j) { subtract(k, j, quotient(k, j)); }

  void size_reduce_column(std::size_t k) {
    for (std::size_t j = k; j-- > 0;) size_reduce_entry(k, j);
  }

  // Swaps columns k-1 and k, then restores triangular form with a Givens
  // rotation on rows k-1, k and re-signs the diagonal positive.
  void swap_and_retriangularize(std::size_t k) {
    for (std::size_t i = 0; i <= k; ++i) std::swap(r(i, k - 1), r(i, k));
    z.swap_columns(k - 1, k);
    const double a = r(k - 1, k - 1);
    const double b = r(k, k - 1);
    const double h = std::hypot(a, b);
    const double c = a / h;
    const double s = b / h;
    r(k - 1, k - 1) = h;
    r(k, k - 1) = 0.0;
    for (std::size_t j = k; j < n; ++j) {
      const double u = r(k - 1, j);
      const double v = r(k, j);
      r(k - 1, j) = c * u + s * v;
      r(k, j) = -s * u + c * v;
    }
    if (r(k, k) < 0.0) {
      for (std::size_t j = k; j < n; ++j) r(k, j) = -r(k, j);
    }
  }

  ReducedBasis finish(ReductionKind kind, double delta) {
    return ReducedBasis{UpperTriangular(std::move(r)), std::move(z), kind, delta};
  }
};

void step_guard(long& steps) {
  if (++steps > max_reduction_steps) {
    throw Error(Errc::precondition_violated, "lattice reduction did not converge");
  }
}

}  // namespace

std::string_view reduction_kind_name(ReductionKind kind) noexcept {
  switch (kind) {
    case ReductionKind::size_only: return "size";
    case ReductionKind::lll: return "lll";
    case ReductionKind::plll_size: return "plll+size";
  }
  return "unknown";
}

ReductionKind parse_reduction_kind(std::string_view name) {
  if (name == "size") return ReductionKind::size_only;
  if (name == "lll") return ReductionKind::lll;
  if (name == "plll+size" || name == "plll") return ReductionKind::plll_size;
  throw Error(Errc::invalid_argument, "unknown reduction kind '" + std::string(name) + "'");
}

ReducedBasis size_reduce(const UpperTriangular& r) {
  Work w(r);
  for (std::size_t k = 1; k < w.n; ++k) w.size_reduce_column(k);
  return w.finish(ReductionKind::size_only, 0.0);
}

ReducedBasis lll_reduce(const UpperTriangular& r, double delta) {
  check_delta(delta);
  Work w(r);
  long steps = 0;
  std::size_t k = 1;
  while (k < w.n) {
    step_guard(steps);
    w.size_reduce_entry(k, k - 1);
    const double lhs = delta * w.r(k - 1, k - 1) * w.r(k - 1, k - 1);
    const double rhs = w.r(k - 1, k) * w.r(k - 1, k) + w.r(k, k) * w.r(k, k);
    if (lhs > rhs) {
      w.swap_and_retriangularize(k);
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      for (std::size_t j = k - 1; j-- > 0;) w.size_reduce_entry(k, j);
      ++k;
    }
  }
  return w.finish(ReductionKind::lll, delta);
}

ReducedBasis plll_reduce(const UpperTriangular& r, double delta) {
  check_delta(delta);
  Work w(r);
  long steps = 0;
  std::size_t k = 1;
  while (k < w.n) {
    step_guard(steps);
    const std::int64_t q = w.quotient(k, k - 1);
    const double reduced = w.r(k - 1, k) - static_cast<double>(q) * w.r(k - 1, k - 1);
    const double lhs = delta * w.r(k - 1, k - 1) * w.r(k - 1, k - 1);
    const double rhs = reduced * reduced + w.r(k, k) * w.r(k, k);
    if (lhs > rhs) {
      w.subtract(k, k - 1, q);
      w.swap_and_retriangularize(k);
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      ++k;
    }
  }
  for (std::size_t c = 1; c < w.n; ++c) w.size_reduce_column(c);
  return w.finish(ReductionKind::plll_size, delta);
}

ReducedBasis reduce(const UpperTriangular& r, ReductionKind kind, double delta) {
  switch (kind) {
    case ReductionKind::size_only: return size_reduce(r);
    case ReductionKind::lll: return lll_reduce(r, delta);
    case ReductionKind::plll_size: return plll_reduce(r, delta);
  }
  throw Error(Errc::invalid_argument, "unknown reduction kind");
}

ReducedBasis reduce_from(const Matrix& basis, const UnimodularTransform& start, ReductionKind kind, double delta) {
  if (basis.cols() != start.dim()) throw Error(Errc::dimension_mismatch, "start transform does not match basis");
  const UpperTriangular r0 = qr_r_factor(basis * start.matrix().to_real());
  ReducedBasis out = reduce(r0, kind, delta);
  out.z = start.then(out.z);
  return out;
}

double size_reduction_ratio(const UpperTriangular& r) {
  double worst = 0.0;
  for (std::size_t k = 1; k < r.dim(); ++k)
    for (std::size_t j = 0; j < k; ++j) worst = std::max(worst, std::abs(r(j, k)) / r(j, j));
  return worst;
}

double lovasz_slack(const UpperTriangular& r, double delta) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < r.dim(); ++k) {
    const double prev = r(k - 1, k - 1) * r(k - 1, k - 1);
    const double slack = r(k - 1, k) * r(k - 1, k) + r(k, k) * r(k, k) - delta * prev;
    worst = std::min(worst, slack / prev);
  }
  return r.dim() < 2 ? 0.0 : worst;
}

}  // namespace smin
