#include "smin/minima.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smin/reduction.hpp"

namespace smin {

namespace {

// Inflation applied to the enumeration radius so boundary vectors survive rounding.
constexpr double radius_slack = 1e-9;

struct Candidate {
  double norm_sq;
  IntVector x;
};

void require_exact_dim(const UpperTriangular& r) {
  if (r.dim() > max_exact_dim) {
    throw Error(Errc::dimension_too_large,
                "exact solver supports dim <= " + std::to_string(max_exact_dim) + ", got " + std::to_string(r.dim()));
  }
}

void canonicalize_sign(IntVector& x) {
  for (std::int64_t v : x) {
    if (v == 0) continue;
    if (v < 0) {
      for (auto& e : x) e = -e;
    }
    return;
  }
}

IntVector times(const UnimodularTransform& z, const IntVector& y) {
  const std::size_t n = y.size();
  IntVector x(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (y[j] != 0) x[i] = checked_add(x[i], checked_mul(z(i, j), y[j]));
  return x;
}

double norm_sq(const Matrix& basis, const IntVector& x) {
  double s = 0.0;
  for (double v : lattice_vector(basis, x)) s += v * v;
  return s;
}

// Every lattice vector of norm <= radius, where radius is the shortest
// (svp) or longest (smp) column of the LLL-reduced basis. Sorted by norm;
// equal norms go to the lexicographically larger sign-canonical coefficient
// vector first, so tied unit vectors come out in index order.
std::vector<Candidate> sorted_candidates(const UpperTriangular& r, bool shortest_only, std::size_t budget,
                                         double& radius) {
  const ReducedBasis reduced = lll_reduce(r, default_delta);
  const Matrix& rr = reduced.r.matrix();
  double bound = shortest_only ? rr.column_norm(0) : 0.0;
  for (std::size_t j = 0; j < rr.cols(); ++j) {
    const double c = rr.column_norm(j);
    bound = shortest_only ? std::min(bound, c) : std::max(bound, c);
  }
  radius = bound * (1.0 + radius_slack);

  std::vector<Candidate> out;
  for (const IntVector& y : enumerate_ball(reduced.r, radius, budget)) {
    IntVector x = times(reduced.z, y);
    canonicalize_sign(x);
    const double ns = norm_sq(r.matrix(), x);
    out.push_back({ns, std::move(x)});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
    return a.x > b.x;
  });
  return out;
}

}  // namespace

MinimaResult solve_smp(const UpperTriangular& r, std::size_t node_budget) {
  require_exact_dim(r);
  const std::size_t n = r.dim();
  MinimaResult result;
  const std::vector<Candidate> cands = sorted_candidates(r, false, node_budget, result.search_radius);

  IndependenceTracker tracker(n);
  for (const Candidate& c : cands) {
    if (result.values.size() == n) break;
    if (!tracker.try_add(c.x)) continue;
    result.values.push_back(std::sqrt(c.norm_sq));
    result.witnesses.push_back(c.x);
  }
  if (result.values.size() != n) {
    throw Error(Errc::precondition_violated, "enumeration ball held fewer than n independent vectors");
  }
  result.exact = true;
  return result;
}

ShortestVector solve_svp(const UpperTriangular& r, std::size_t node_budget) {
  require_exact_dim(r);
  double radius = 0.0;
  const std::vector<Candidate> cands = sorted_candidates(r, true, node_budget, radius);
  if (cands.empty()) throw Error(Errc::precondition_violated, "enumeration found no nonzero vector");
  return {std::sqrt(cands.front().norm_sq), cands.front().x};
}

IndependentVectors solve_sivp(const UpperTriangular& r, std::size_t node_budget) {
  const MinimaResult m = solve_smp(r, node_budget);
  return {m.values.back(), IntMatrix::from_columns(m.witnesses)};
}

std::vector<double> minima_of(const SpdMatrix& g) { return solve_smp(cholesky(g)).values; }

}  // namespace smin
