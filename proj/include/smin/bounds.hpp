#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "smin/linalg.hpp"
#include "smin/minima.hpp"

namespace smin {

/// Relative margin required before a strict inequality between minima counts
/// as holding.
inline constexpr double strict_tol = 1e-9;

/// a > b with margin strict_tol * max(|a|, |b|).
bool strictly_greater(double a, double b) noexcept;

struct Interval {
  double lower;
  double upper;
};

// Indices named `i` below are 1-based: i selects lambda_i.

/// min_j r_jj <= lambda_i(R) <= max_{j<=i} ||R_{1:j,j}||.
Interval diagonal_column_bounds(const UpperTriangular& r, std::size_t i);

/// |det R|^{1/n}, a lower bound on lambda_n(R).
double determinant_lower_bound(const UpperTriangular& r);

/// Lower bound on lambda_i(chol(G1 + G2)) from minima of chol(G1) and
/// chol(G2): max{sqrt(li1^2 + l1_2^2), sqrt(li2^2 + l1_1^2)}. Inputs may be
/// exact minima or certified lower bounds on them.
double sum_lower_bound(const SpdMatrix& g1, const SpdMatrix& g2, std::size_t i, double lam1_g1, double lam1_g2,
                       double lami_g1, double lami_g2);

enum class InverseSide { first, second };

/// Lower bound on lambda_i(chol(G1^{-1})) (first) or lambda_i(chol(G2^{-1}))
/// (second), from exact minima of the two Woodbury parts of that inverse.
double inverse_lower_bound(const SpdMatrix& g1, const SpdMatrix& g2, std::size_t i, InverseSide which);
/// The same for every i at once, sharing the enumeration work.
std::vector<double> inverse_lower_bounds(const SpdMatrix& g1, const SpdMatrix& g2, InverseSide which);

/// Weakened sum bound that needs only the Cholesky diagonals and lambda_1
/// of each factor: the diagonal minimum for i < n, |det R_k|^{2/n} for i = n.
double factor_sum_lower_bound(const SpdMatrix& g1, const SpdMatrix& g2, std::size_t i);

/// One family of strict inequalities lhs_i > rhs_i between minima sequences.
struct Comparison {
  std::string name;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<bool> holds;

  bool all_hold() const;
};

struct MonotonicityReport {
  std::vector<Comparison> comparisons;

  bool all_hold() const;
};

/// For G1 - G2 SPD: lambda_i(chol G1) > lambda_i(chol G2) and
/// lambda_i(chol G1^{-1}) < lambda_i(chol G2^{-1}). Throws
/// precondition_violated when G1 - G2 is not SPD.
MonotonicityReport check_monotonicity(const SpdMatrix& g1, const SpdMatrix& g2);

/// The same ordering after the congruence G + B^T G_k B (G PSD m x m, B n x m
/// full column rank) and after substituting G_k^{-1}, with the inverse
/// factors of each. Throws rank_deficient or precondition_violated.
MonotonicityReport check_congruence_monotonicity(const SpdMatrix& g, const Matrix& b, const SpdMatrix& g1,
                                                 const SpdMatrix& g2);

enum class BoundSource {
  diagonal_min,
  column_max,
  determinant_root,
  sum,
  inverse_first,
  inverse_second,
  factor_sum_diagonal,
  factor_sum_determinant,
};

std::string_view bound_source_name(BoundSource s) noexcept;
BoundSource parse_bound_source(std::string_view name);

struct BoundEntry {
  double lower;
  double upper;
  BoundSource lower_source;
  BoundSource upper_source;
};

/// Per-index bounds on the minima of one lattice.
struct BoundsReport {
  std::vector<BoundEntry> entries;
};

/// Diagonal/column bounds of R, with the column bound also taken on the
/// LLL-reduced basis (the smaller one wins), and the determinant root at i = n.
BoundsReport basis_bounds(const UpperTriangular& r);

struct PairBoundsReport {
  BoundsReport sum;             // chol(G1 + G2)
  BoundsReport inverse_first;   // chol(G1^{-1})
  BoundsReport inverse_second;  // chol(G2^{-1})
};

/// Strongest available lower bound per index for the three lattices built from
/// an SPD pair. Exact minima of the inputs are used when dim <= max_exact_dim;
/// above that the sum bound is fed certified lower bounds instead.
PairBoundsReport pair_bounds(const SpdMatrix& g1, const SpdMatrix& g2);

}  // namespace smin
