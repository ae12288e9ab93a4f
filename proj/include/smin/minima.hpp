#pragma once

#include <cstddef>
#include <vector>

#include "smin/enumeration.hpp"
#include "smin/integer.hpp"
#include "smin/linalg.hpp"

namespace smin {

/// Largest dimension the exact solvers accept.
inline constexpr std::size_t max_exact_dim = 10;

/// Successive minima lambda_1 <= ... <= lambda_n of L(R) with witnesses.
/// values[i] is lambda_{i+1}; witnesses[i] is an integer x with ||R x|| = values[i].
struct MinimaResult {
  std::vector<double> values;
  std::vector<IntVector> witnesses;
  bool exact = true;
  double search_radius = 0.0;

  std::size_t dim() const noexcept { return values.size(); }
};

struct ShortestVector {
  double length;
  IntVector witness;
};

struct IndependentVectors {
  /// max_i ||R x_i||, equal to lambda_n for the exact solver.
  double objective;
  /// Columns x_1..x_n; invertible over the rationals.
  IntMatrix x;
};

/// Exact successive minima by enumerating every lattice vector inside a ball
/// that provably holds n independent vectors, then picking greedily by
/// norm, ties going to the lexicographically larger coefficient vector (first
/// nonzero entry positive). Throws dimension_too_large above
/// max_exact_dim and radius_overflow past the node budget.
MinimaResult solve_smp(const UpperTriangular& r, std::size_t node_budget = default_node_budget);

/// lambda_1 with a witness; ties broken as in solve_smp.
ShortestVector solve_svp(const UpperTriangular& r, std::size_t node_budget = default_node_budget);

/// Shortest independent vectors: the SMP witnesses as the columns of X.
IndependentVectors solve_sivp(const UpperTriangular& r, std::size_t node_budget = default_node_budget);

/// Convenience: solve_smp(cholesky(g)).values.
std::vector<double> minima_of(const SpdMatrix& g);

}  // namespace smin
