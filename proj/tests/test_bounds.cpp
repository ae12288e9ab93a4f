#include <cmath>
#include <vector>

#include "doctest.h"
#include "smin/bounds.hpp"
#include "smin/minima.hpp"
#include "smin/random.hpp"
#include "smin/verify.hpp"
#include "support.hpp"

using namespace smin;
using support::close_rel;

namespace {

SpdMatrix diag_spd(std::vector<double> d) { return SpdMatrix(Matrix::diagonal(d)); }

}  // namespace

TEST_CASE("diagonal and column bounds") {
  const UpperTriangular a(1.7 * Matrix::identity(4));
  for (std::size_t i = 1; i <= 4; ++i) {
    const Interval iv = diagonal_column_bounds(a, i);
    CHECK(iv.lower == doctest::Approx(1.7));
    CHECK(iv.upper == doctest::Approx(1.7));
  }
  const Interval iv = diagonal_column_bounds(UpperTriangular(Matrix::from_rows({{2, 0}, {0, 3}})), 2);
  CHECK(iv.lower == 2.0);
  CHECK(iv.upper == 3.0);
  CHECK_THROWS_AS(diagonal_column_bounds(a, 0), Error);
  CHECK_THROWS_AS(diagonal_column_bounds(a, 5), Error);

  for (std::uint64_t t = 0; t < 40; ++t) {
    Rng rng = support::rng_for(8000 + t);
    const UpperTriangular r = random_basis(rng, 6);
    const MinimaResult m = solve_smp(r);
    for (std::size_t i = 1; i <= 6; ++i) {
      const Interval b = diagonal_column_bounds(r, i);
      CHECK(within_upper(b.lower, m.values[i - 1]));
      CHECK(within_upper(m.values[i - 1], b.upper));
    }
  }
}

TEST_CASE("determinant root bound") {
  CHECK(determinant_lower_bound(UpperTriangular(2.5 * Matrix::identity(3))) == doctest::Approx(2.5));
  const UpperTriangular d23(Matrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(close_rel(determinant_lower_bound(d23), std::sqrt(6.0), 1e-15));
  CHECK(determinant_lower_bound(d23) <= solve_smp(d23).values[1]);
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = support::rng_for(8100 + t);
    const UpperTriangular r = random_basis(rng, 5);
    CHECK(within_upper(determinant_lower_bound(r), solve_smp(r).values.back()));
  }
}

TEST_CASE("sum bound on worked examples") {
  const std::vector<double> alpha = {0.5, 1.0, 2.5, 4.0};
  const double beta = 1.7;
  const SpdMatrix g1 = diag_spd(alpha);
  const SpdMatrix g2(beta * Matrix::identity(4));
  const auto l1 = minima_of(g1);
  const auto l2 = minima_of(g2);
  const auto l3 = minima_of(SpdMatrix(g1.matrix() + g2.matrix()));
  for (std::size_t i = 1; i <= 4; ++i) {
    const double b = sum_lower_bound(g1, g2, i, l1[0], l2[0], l1[i - 1], l2[i - 1]);
    CHECK(close_rel(b, std::sqrt(alpha[i - 1] + beta), 1e-12));
    CHECK(close_rel(b, l3[i - 1], 1e-12));
  }

  const SpdMatrix e1 = diag_spd({3, 1});
  const SpdMatrix e2 = diag_spd({1, 8});
  const auto m1 = minima_of(e1);
  const auto m2 = minima_of(e2);
  const auto m3 = minima_of(SpdMatrix(e1.matrix() + e2.matrix()));
  const double b = sum_lower_bound(e1, e2, 2, m1[0], m2[0], m1[1], m2[1]);
  CHECK(close_rel(b, 3.0, 1e-15));
  CHECK(close_rel(m3[1], 3.0, 1e-15));
  CHECK(strictly_greater(std::hypot(m1[1], m2[1]), m3[1]));

  CHECK_THROWS_AS(sum_lower_bound(e1, e2, 1, -1.0, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(sum_lower_bound(e1, e2, 3, 1.0, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(sum_lower_bound(e1, SpdMatrix(Matrix::identity(3)), 1, 1.0, 1.0, 1.0, 1.0), Error);
}

TEST_CASE("inverse bounds") {
  const SpdMatrix id(Matrix::identity(3));
  for (InverseSide side : {InverseSide::first, InverseSide::second}) {
    for (std::size_t i = 1; i <= 3; ++i) CHECK(close_rel(inverse_lower_bound(id, id, i, side), 1.0, 1e-12));
  }
  const std::vector<double> alpha = {0.5, 1.0, 2.5, 4.0};
  const double beta = 5.0;
  const SpdMatrix g1 = diag_spd(alpha);
  const SpdMatrix g2(beta * Matrix::identity(4) - g1.matrix());
  const auto inv1 = minima_of(inverse(g1));
  const auto inv2 = minima_of(inverse(g2));
  const auto b1 = inverse_lower_bounds(g1, g2, InverseSide::first);
  const auto b2 = inverse_lower_bounds(g1, g2, InverseSide::second);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(close_rel(b1[i], inv1[i], 1e-9));
    CHECK(close_rel(b2[i], inv2[i], 1e-9));
    CHECK(close_rel(inverse_lower_bound(g1, g2, i + 1, InverseSide::first), b1[i], 1e-15));
  }
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = support::rng_for(8200 + t);
    const std::size_t n = 2 + t % 3;
    const SpdMatrix a = random_spd(rng, n);
    const SpdMatrix b = random_spd(rng, n);
    const auto la = minima_of(inverse(a));
    const auto lb = inverse_lower_bounds(a, b, InverseSide::first);
    for (std::size_t i = 0; i < n; ++i) CHECK(within_upper(lb[i], la[i]));
  }
}

TEST_CASE("factor sum bound") {
  const std::vector<double> alpha = {0.5, 1.0, 2.5, 4.0};
  const double beta = 1.7;
  const SpdMatrix g1 = diag_spd(alpha);
  const SpdMatrix g2(beta * Matrix::identity(4));
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(close_rel(factor_sum_lower_bound(g1, g2, i), std::sqrt(alpha[0] + beta), 1e-12));
  }
  // i = n: max{sqrt(sqrt(4*9) + 1), sqrt(1 + 2^2)} = sqrt(7).
  CHECK(close_rel(factor_sum_lower_bound(diag_spd({4, 9}), SpdMatrix(Matrix::identity(2)), 2), std::sqrt(7.0), 1e-12));

  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = support::rng_for(8300 + t);
    const std::size_t n = 2 + t % 4;
    const SpdMatrix a = random_spd(rng, n);
    const SpdMatrix b = random_spd(rng, n);
    const auto la = minima_of(a);
    const auto lb = minima_of(b);
    const auto lab = minima_of(SpdMatrix(a.matrix() + b.matrix()));
    for (std::size_t i = 1; i <= n; ++i) {
      const double s = sum_lower_bound(a, b, i, la[0], lb[0], la[i - 1], lb[i - 1]);
      CHECK(within_upper(factor_sum_lower_bound(a, b, i), s));
      CHECK(within_upper(s, lab[i - 1]));
    }
  }
}

TEST_CASE("monotonicity under an SPD difference") {
  {
    const MonotonicityReport rep = check_monotonicity(SpdMatrix(2.0 * Matrix::identity(3)), SpdMatrix(Matrix::identity(3)));
    CHECK(rep.all_hold());
    REQUIRE(rep.comparisons.size() == 2);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(close_rel(rep.comparisons[0].lhs[i], std::sqrt(2.0), 1e-15));
      // The inverse comparison lists the larger side (the smaller matrix) first.
      CHECK(close_rel(rep.comparisons[1].lhs[i], 1.0, 1e-12));
      CHECK(close_rel(rep.comparisons[1].rhs[i], 1.0 / std::sqrt(2.0), 1e-12));
    }
  }
  CHECK(check_monotonicity(diag_spd({4, 2}), diag_spd({1, 1})).all_hold());
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = support::rng_for(8400 + t);
    const std::size_t n = 2 + t % 3;
    const SpdMatrix lower = random_spd(rng, n);
    const SpdMatrix upper(lower.matrix() + random_spd(rng, n).matrix());
    CHECK(check_monotonicity(upper, lower).all_hold());
  }
  try {
    check_monotonicity(diag_spd({1, 1}), diag_spd({2, 0.5}));
    FAIL("non-SPD difference accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::precondition_violated);
  }
}

TEST_CASE("monotonicity after congruence") {
  const SpdMatrix zero(Matrix(3, 3), Definiteness::semi);
  const SpdMatrix g1 = diag_spd({3, 2, 5});
  const SpdMatrix g2 = diag_spd({1, 1, 1});
  const MonotonicityReport plain = check_monotonicity(g1, g2);
  const MonotonicityReport cong = check_congruence_monotonicity(zero, Matrix::identity(3), g1, g2);
  CHECK(cong.all_hold());
  CHECK(cong.comparisons[0].lhs == plain.comparisons[0].lhs);

  const SpdMatrix i3(Matrix::identity(3), Definiteness::semi);
  const MonotonicityReport rep =
      check_congruence_monotonicity(i3, Matrix::identity(3), SpdMatrix(2.0 * Matrix::identity(3)), SpdMatrix(Matrix::identity(3)));
  CHECK(rep.all_hold());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(close_rel(rep.comparisons[0].lhs[i], std::sqrt(3.0), 1e-15));
    CHECK(close_rel(rep.comparisons[0].rhs[i], std::sqrt(2.0), 1e-15));
  }

  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = support::rng_for(8500 + t);
    const SpdMatrix shift = random_psd(rng, 3, 1 + t % 2);
    const Matrix b = random_full_column_rank(rng, 3, 3);
    const SpdMatrix lower = random_spd(rng, 3);
    const SpdMatrix upper(lower.matrix() + random_spd(rng, 3).matrix());
    CHECK(check_congruence_monotonicity(shift, b, upper, lower).all_hold());
  }
  CHECK_THROWS_AS(check_congruence_monotonicity(i3, Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 0, 0}}), g1, g2), Error);
}

TEST_CASE("bound reports") {
  const BoundsReport rep = basis_bounds(UpperTriangular(Matrix::from_rows({{2, 0}, {0, 3}})));
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.entries[0].lower == 2.0);
  CHECK(rep.entries[1].upper == 3.0);
  CHECK(rep.entries[1].lower == doctest::Approx(std::sqrt(6.0)));
  CHECK(rep.entries[1].lower_source == BoundSource::determinant_root);
  CHECK(bound_source_name(BoundSource::column_max) == "column-max");

  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = support::rng_for(8600 + t);
    const std::size_t n = 2 + t % 4;
    const SpdMatrix a = random_spd(rng, n);
    const SpdMatrix b = random_spd(rng, n);
    const PairBoundsReport pr = pair_bounds(a, b);
    const auto sum = minima_of(SpdMatrix(a.matrix() + b.matrix()));
    const auto ia = minima_of(inverse(a));
    const auto ib = minima_of(inverse(b));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(within_upper(pr.sum.entries[i].lower, sum[i]));
      CHECK(within_upper(sum[i], pr.sum.entries[i].upper));
      CHECK(within_upper(pr.inverse_first.entries[i].lower, ia[i]));
      CHECK(within_upper(ia[i], pr.inverse_first.entries[i].upper));
      CHECK(within_upper(pr.inverse_second.entries[i].lower, ib[i]));
      CHECK(within_upper(ib[i], pr.inverse_second.entries[i].upper));
    }
  }
}
