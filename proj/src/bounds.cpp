#include "smin/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smin/reduction.hpp"

namespace smin {

namespace {

void require_index(std::size_t i, std::size_t n) {
  if (i < 1 || i > n) {
    throw Error(Errc::index_out_of_range, "index " + std::to_string(i) + " outside 1.." + std::to_string(n));
  }
}

void require_same_dim(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) throw Error(Errc::dimension_mismatch, "SPD pair dimensions differ");
}

double combine(double lami_a, double lam1_b, double lami_b, double lam1_a) {
  return std::max(std::sqrt(lami_a * lami_a + lam1_b * lam1_b), std::sqrt(lami_b * lami_b + lam1_a * lam1_a));
}

double min_diagonal(const UpperTriangular& r) {
  const auto d = r.diagonal();
  return *std::min_element(d.begin(), d.end());
}

Comparison compare(std::string name, std::vector<double> lhs, std::vector<double> rhs) {
  Comparison c{std::move(name), std::move(lhs), std::move(rhs), {}};
  for (std::size_t i = 0; i < c.lhs.size(); ++i) c.holds.push_back(strictly_greater(c.lhs[i], c.rhs[i]));
  return c;
}

std::vector<double> inverse_minima(const SpdMatrix& g) { return minima_of(inverse(g)); }

}  // namespace

bool strictly_greater(double a, double b) noexcept {
  return a - b > strict_tol * std::max(std::abs(a), std::abs(b));
}

Interval diagonal_column_bounds(const UpperTriangular& r, std::size_t i) {
  require_index(i, r.dim());
  double upper = 0.0;
  for (std::size_t j = 0; j < i; ++j) upper = std::max(upper, r.matrix().column_norm(j));
  return {min_diagonal(r), upper};
}

double determinant_lower_bound(const UpperTriangular& r) {
  return std::exp(log_abs_det(r) / static_cast<double>(r.dim()));
}

double sum_lower_bound(const SpdMatrix& g1, const SpdMatrix& g2, std::size_t i, double lam1_g1, double lam1_g2,
                       double lami_g1, double lami_g2) {
  require_same_dim(g1, g2);
  require_index(i, g1.dim());
  for (double v : {lam1_g1, lam1_g2, lami_g1, lami_g2}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(Errc::negative_input, "minima inputs must be finite and nonnegative");
  }
  return combine(lami_g1, lam1_g2, lami_g2, lam1_g1);
}

std::vector<double> inverse_lower_bounds(const SpdMatrix& g1, const SpdMatrix& g2, InverseSide which) {
  require_same_dim(g1, g2);
  if (g1.dim() > max_exact_dim) throw Error(Errc::dimension_too_large, "inverse bound needs exact minima");
  // (G1+G2)^{-1} is shared; the remainder uses the side being bounded.
  const auto [sum_inv, rest] =
      which == InverseSide::first ? woodbury_decompose(g1, g2) : woodbury_decompose(g2, g1);
  const std::vector<double> a = minima_of(sum_inv);
  const std::vector<double> b = minima_of(rest);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = combine(a[i], b[0], b[i], a[0]);
  return out;
}

double inverse_lower_bound(const SpdMatrix& g1, const SpdMatrix& g2, std::size_t i, InverseSide which) {
  require_same_dim(g1, g2);
  require_index(i, g1.dim());
  return inverse_lower_bounds(g1, g2, which)[i - 1];
}

double factor_sum_lower_bound(const SpdMatrix& g1, const SpdMatrix& g2, std::size_t i) {
  require_same_dim(g1, g2);
  const std::size_t n = g1.dim();
  require_index(i, n);
  const UpperTriangular r1 = cholesky(g1);
  const UpperTriangular r2 = cholesky(g2);
  const double lam1_1 = solve_svp(r1).length;
  const double lam1_2 = solve_svp(r2).length;
  double t1;
  double t2;
  if (i < n) {
    t1 = min_diagonal(r1);
    t2 = min_diagonal(r2);
  } else {
    t1 = determinant_lower_bound(r1);
    t2 = determinant_lower_bound(r2);
  }
  return combine(t1, lam1_2, t2, lam1_1);
}

bool Comparison::all_hold() const {
  return std::all_of(holds.begin(), holds.end(), [](bool h) { return h; });
}

bool MonotonicityReport::all_hold() const {
  return std::all_of(comparisons.begin(), comparisons.end(), [](const Comparison& c) { return c.all_hold(); });
}

MonotonicityReport check_monotonicity(const SpdMatrix& g1, const SpdMatrix& g2) {
  require_same_dim(g1, g2);
  if (!is_spd(g1.matrix() - g2.matrix())) throw Error(Errc::precondition_violated, "G1 - G2 is not positive definite");
  MonotonicityReport report;
  report.comparisons.push_back(compare("direct", minima_of(g1), minima_of(g2)));
  report.comparisons.push_back(compare("inverse", inverse_minima(g2), inverse_minima(g1)));
  return report;
}

MonotonicityReport check_congruence_monotonicity(const SpdMatrix& g, const Matrix& b, const SpdMatrix& g1,
                                                 const SpdMatrix& g2) {
  require_same_dim(g1, g2);
  if (b.rows() != g1.dim() || b.cols() != g.dim()) {
    throw Error(Errc::dimension_mismatch, "B must be n x m with G1 n x n and G m x m");
  }
  const Matrix bt = b.transpose();
  if (!is_spd(bt * b)) throw Error(Errc::rank_deficient, "B is not full column rank");
  if (!is_spd(g1.matrix() - g2.matrix())) throw Error(Errc::precondition_violated, "G1 - G2 is not positive definite");

  auto congruent = [&](const Matrix& w) { return SpdMatrix(g.matrix() + bt * w * b); };
  const SpdMatrix m1 = congruent(g1.matrix());
  const SpdMatrix m2 = congruent(g2.matrix());
  const SpdMatrix m3 = congruent(inverse(g1).matrix());
  const SpdMatrix m4 = congruent(inverse(g2).matrix());

  MonotonicityReport report;
  report.comparisons.push_back(compare("direct", minima_of(m1), minima_of(m2)));
  report.comparisons.push_back(compare("direct-inverse", inverse_minima(m2), inverse_minima(m1)));
  report.comparisons.push_back(compare("inverted-weight", minima_of(m4), minima_of(m3)));
  report.comparisons.push_back(compare("inverted-weight-inverse", inverse_minima(m3), inverse_minima(m4)));
  return report;
}

std::string_view bound_source_name(BoundSource s) noexcept {
  switch (s) {
    case BoundSource::diagonal_min: return "diagonal-min";
    case BoundSource::column_max: return "column-max";
    case BoundSource::determinant_root: return "determinant-root";
    case BoundSource::sum: return "sum";
    case BoundSource::inverse_first: return "inverse-first";
    case BoundSource::inverse_second: return "inverse-second";
    case BoundSource::factor_sum_diagonal: return "factor-sum-diagonal";
    case BoundSource::factor_sum_determinant: return "factor-sum-determinant";
  }
  return "unknown";
}

BoundSource parse_bound_source(std::string_view name) {
  for (BoundSource s : {BoundSource::diagonal_min, BoundSource::column_max, BoundSource::determinant_root,
                        BoundSource::sum, BoundSource::inverse_first, BoundSource::inverse_second,
                        BoundSource::factor_sum_diagonal, BoundSource::factor_sum_determinant}) {
    if (bound_source_name(s) == name) return s;
  }
  throw Error(Errc::invalid_argument, "unknown bound source '" + std::string(name) + "'");
}

BoundsReport basis_bounds(const UpperTriangular& r) {
  const std::size_t n = r.dim();
  const UpperTriangular reduced = lll_reduce(r).r;
  BoundsReport report;
  for (std::size_t i = 1; i <= n; ++i) {
    const Interval plain = diagonal_column_bounds(r, i);
    const Interval red = diagonal_column_bounds(reduced, i);
    BoundEntry e{plain.lower, std::min(plain.upper, red.upper), BoundSource::diagonal_min, BoundSource::column_max};
    if (i == n) {
      const double d = determinant_lower_bound(r);
      if (d > e.lower) {
        e.lower = d;
        e.lower_source = BoundSource::determinant_root;
      }
    }
    report.entries.push_back(e);
  }
  return report;
}

namespace {

void raise_lower(BoundEntry& e, double value, BoundSource source) {
  if (value > e.lower) {
    e.lower = value;
    e.lower_source = source;
  }
}

}  // namespace

PairBoundsReport pair_bounds(const SpdMatrix& g1, const SpdMatrix& g2) {
  require_same_dim(g1, g2);
  const std::size_t n = g1.dim();
  const UpperTriangular r1 = cholesky(g1);
  const UpperTriangular r2 = cholesky(g2);
  const UpperTriangular r3 = cholesky(SpdMatrix(g1.matrix() + g2.matrix()));

  PairBoundsReport out;
  out.sum = basis_bounds(r3);
  out.inverse_first = basis_bounds(cholesky(inverse(g1)));
  out.inverse_second = basis_bounds(cholesky(inverse(g2)));

  const bool exact = n <= max_exact_dim;
  std::vector<double> lam1;
  std::vector<double> lam2;
  if (exact) {
    lam1 = solve_smp(r1).values;
    lam2 = solve_smp(r2).values;
  } else {
    // certified lower bounds only
    for (std::size_t i = 1; i <= n; ++i) {
      lam1.push_back(i == n ? determinant_lower_bound(r1) : min_diagonal(r1));
      lam2.push_back(i == n ? determinant_lower_bound(r2) : min_diagonal(r2));
    }
    lam1[0] = min_diagonal(r1);
    lam2[0] = min_diagonal(r2);
  }

  for (std::size_t i = 1; i <= n; ++i) {
    BoundEntry& e = out.sum.entries[i - 1];
    raise_lower(e, sum_lower_bound(g1, g2, i, lam1[0], lam2[0], lam1[i - 1], lam2[i - 1]), BoundSource::sum);
    if (exact) {
      const BoundSource src = i < n ? BoundSource::factor_sum_diagonal : BoundSource::factor_sum_determinant;
      raise_lower(e, factor_sum_lower_bound(g1, g2, i), src);
    }
  }
  if (exact) {
    const auto first = inverse_lower_bounds(g1, g2, InverseSide::first);
    const auto second = inverse_lower_bounds(g1, g2, InverseSide::second);
    for (std::size_t i = 0; i < n; ++i) {
      raise_lower(out.inverse_first.entries[i], first[i], BoundSource::inverse_first);
      raise_lower(out.inverse_second.entries[i], second[i], BoundSource::inverse_second);
    }
  }
  return out;
}

}  // namespace smin
