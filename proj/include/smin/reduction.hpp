#pragma once

#include <string_view>

#include "smin/integer.hpp"
#include "smin/linalg.hpp"

namespace smin {

enum class ReductionKind { size_only, lll, plll_size };

std::string_view reduction_kind_name(ReductionKind kind) noexcept;
ReductionKind parse_reduction_kind(std::string_view name);

inline constexpr double default_delta = 0.99;

/// Reduced upper-triangular basis together with the transform Z such that
/// `r` is the R factor of (input basis) * Z.
struct ReducedBasis {
  UpperTriangular r;
  UnimodularTransform z;
  ReductionKind kind;
  double delta;
};

/// Reduces every above-diagonal entry to |r_jk| <= r_jj / 2. Entries already
/// within the bound are left untouched.
ReducedBasis size_reduce(const UpperTriangular& r);

/// LLL reduction with parameter delta in (1/4, 1].
ReducedBasis lll_reduce(const UpperTriangular& r, double delta = default_delta);

/// Partial LLL: swaps are decided by the diagonal-decrease test alone and only
/// the (k-1, k) entry is reduced, and only when a swap happens. One full size
/// reduction pass runs at the end.
ReducedBasis plll_reduce(const UpperTriangular& r, double delta = default_delta);

/// Dispatches to lll_reduce, plll_reduce or size_reduce.
ReducedBasis reduce(const UpperTriangular& r, ReductionKind kind, double delta = default_delta);

/// Re-triangularizes basis * start and reduces it; the returned transform is
/// start composed with the transform found by the reduction.
ReducedBasis reduce_from(const Matrix& basis, const UnimodularTransform& start, ReductionKind kind,
                         double delta = default_delta);

/// Largest |r_jk| / r_jj over j < k (0 for dimension 1).
double size_reduction_ratio(const UpperTriangular& r);

/// Smallest slack r_{k-1,k}^2 + r_kk^2 - delta * r_{k-1,k-1}^2, relative to
/// r_{k-1,k-1}^2, over adjacent pairs; nonnegative iff the Lovasz condition holds.
double lovasz_slack(const UpperTriangular& r, double delta);

}  // namespace smin
