#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "smin/minima.hpp"
#include "smin/random.hpp"
#include "smin/reduction.hpp"
#include "support.hpp"

using namespace smin;
using support::close_rel;

namespace {

// Checks shared by every reduction output: unimodular Z, same lattice,
// and the structural conditions the kind promises.
void check_reduced(const UpperTriangular& input, const ReducedBasis& out) {
  const BigInt d = exact_det(out.z.matrix());
  CHECK((d == 1 || d == -1));
  const Matrix g = support::transformed_gram(input.gram(), out.z.matrix());
  CHECK(max_abs_diff(out.r.gram(), g) <= tol::fact * g.max_abs());
  CHECK(size_reduction_ratio(out.r) <= 0.5 + 1e-9);
  if (out.kind != ReductionKind::size_only) CHECK(lovasz_slack(out.r, out.delta) >= -1e-9);
}

}  // namespace

TEST_CASE("size reduction examples") {
  {
    const UpperTriangular r(Matrix::from_rows({{1, 0.4}, {0, 1}}));
    const ReducedBasis out = size_reduce(r);
    CHECK(out.r.matrix() == r.matrix());
    CHECK(out.z.matrix() == IntMatrix::identity(2));
  }
  {
    const ReducedBasis out = size_reduce(UpperTriangular(Matrix::from_rows({{1, 0.7}, {0, 1}})));
    CHECK(out.r(0, 1) == doctest::Approx(-0.3));
    CHECK(out.r(1, 1) == 1.0);
    CHECK(out.z.matrix() == IntMatrix::from_rows({{1, -1}, {0, 1}}));
  }
  {
    const UpperTriangular r(Matrix::from_rows({{2.5, 0}, {0, 0.3}}));
    CHECK(size_reduce(r).r.matrix() == r.matrix());
  }
}

TEST_CASE("LLL leaves reduced inputs alone") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (double delta : {0.3, 0.75, 0.99, 1.0}) {
      const ReducedBasis out = lll_reduce(UpperTriangular(Matrix::identity(n)), delta);
      CHECK(out.r.matrix() == Matrix::identity(n));
      CHECK(out.z.matrix() == IntMatrix::identity(n));
    }
  }
  // Hexagonal basis: |mu| = 1/2 exactly and the exchange condition is an equality-free pass.
  const UpperTriangular hex(Matrix::from_rows({{1, 0.5}, {0, std::sqrt(3.0) / 2}}));
  for (ReductionKind kind : {ReductionKind::lll, ReductionKind::plll_size, ReductionKind::size_only}) {
    const ReducedBasis out = reduce(hex, kind);
    CHECK(out.r.matrix() == hex.matrix());
    CHECK(out.z.matrix() == IntMatrix::identity(2));
  }
}

TEST_CASE("LLL first vector is within the approximation factor") {
  const Matrix a = Matrix::from_rows({{1, 0}, {0.99, 0.1}});
  const UpperTriangular r = qr_r_factor(a);
  const ReducedBasis out = lll_reduce(r, 0.75);
  check_reduced(r, out);
  const double shortest_input = std::min(a.column_norm(0), a.column_norm(1));
  CHECK(out.r.matrix().column_norm(0) <= shortest_input * (1 + 1e-12));
  const double lam1 = solve_svp(r).length;
  CHECK(out.r.matrix().column_norm(0) <= std::sqrt(2.0) * lam1 * (1 + 1e-12));
}

TEST_CASE("delta outside (1/4, 1] is rejected") {
  const UpperTriangular r(Matrix::identity(2));
  for (double bad : {0.25, 0.1, 1.01, -1.0, std::nan("")}) {
    try {
      lll_reduce(r, bad);
      FAIL("delta accepted");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::invalid_delta);
    }
    CHECK_THROWS_AS(plll_reduce(r, bad), Error);
  }
}

TEST_CASE("random bases: all reductions produce valid outputs") {
  for (std::uint64_t t = 0; t < 60; ++t) {
    Rng rng = support::rng_for(1000 + t);
    const std::size_t n = 2 + t % 9;
    const UpperTriangular r = random_basis(rng, n);
    for (ReductionKind kind : {ReductionKind::size_only, ReductionKind::lll, ReductionKind::plll_size}) {
      check_reduced(r, reduce(r, kind));
    }
  }
}

TEST_CASE("PLLL and LLL agree on the diagonal profile") {
  for (std::uint64_t t = 0; t < 40; ++t) {
    Rng rng = support::rng_for(2000 + t);
    const std::size_t n = t < 20 ? 8 : 2;
    const UpperTriangular r = random_basis(rng, n);
    const ReducedBasis a = lll_reduce(r);
    const ReducedBasis b = plll_reduce(r);
    const auto da = a.r.diagonal();
    const auto db = b.r.diagonal();
    for (std::size_t i = 0; i < n; ++i) CHECK(close_rel(da[i], db[i], 1e-9));
    const auto din = r.diagonal();
    CHECK(*std::max_element(db.begin(), db.end()) <= *std::max_element(din.begin(), din.end()) * (1 + 1e-12));
    CHECK(max_abs_diff(a.r.gram(), b.r.gram()) <= tol::fact * a.r.gram().max_abs());
  }
}

TEST_CASE("reduce_from composes the starting transform") {
  Rng rng = support::rng_for(3000);
  const UpperTriangular r = random_basis(rng, 5);
  const ReducedBasis first = lll_reduce(r);
  const ReducedBasis again = reduce_from(r.matrix(), first.z, ReductionKind::plll_size, default_delta);
  const Matrix g = support::transformed_gram(r.gram(), again.z.matrix());
  CHECK(max_abs_diff(again.r.gram(), g) <= tol::fact * g.max_abs());
  CHECK_THROWS_AS(reduce_from(r.matrix(), UnimodularTransform(3), ReductionKind::lll, 0.99), Error);
}

TEST_CASE("reduction kind names round-trip") {
  for (ReductionKind k : {ReductionKind::size_only, ReductionKind::lll, ReductionKind::plll_size}) {
    CHECK(parse_reduction_kind(reduction_kind_name(k)) == k);
  }
  CHECK(parse_reduction_kind("plll") == ReductionKind::plll_size);
  CHECK_THROWS_AS(parse_reduction_kind("bkz"), Error);
}
