#include "smin/enumeration.hpp"

#include <cmath>

namespace smin {

namespace {

struct Enumerator {
  const UpperTriangular& r;
  double radius_sq;
  std::size_t budget;
  std::size_t nodes = 0;
  std::size_t n;
  IntVector x;
  std::vector<IntVector> out;

  Enumerator(const UpperTriangular& basis, double radius, std::size_t node_budget)
      : r(basis), radius_sq(radius * radius), budget(node_budget), n(basis.dim()), x(basis.dim(), 0) {}

  // Level k fixes x[k]; `partial` is the squared norm contributed by levels
  // above k. `upper_zero` means x[k+1..n) are all zero.
  void visit(std::size_t k, double partial, bool upper_zero) {
    double center = 0.0;
    for (std::size_t j = k + 1; j < n; ++j) center -= r(k, j) * static_cast<double>(x[j]);
    center /= r(k, k);
    const double remaining = radius_sq - partial;
    if (remaining < 0.0) return;
    const double half_width = std::sqrt(remaining) / r(k, k);
    double lo = std::ceil(center - half_width);
    const double hi = std::floor(center + half_width);
    if (upper_zero && lo < 0.0) lo = 0.0;
    for (double v = lo; v <= hi; v += 1.0) {
      if (++nodes > budget) throw Error(Errc::radius_overflow, "enumeration exceeded the node budget");
      const double t = r(k, k) * (v - center);
      const double next = partial + t * t;
      if (next > radius_sq) continue;
      x[k] = static_cast<std::int64_t>(v);
      const bool zero_here = upper_zero && x[k] == 0;
      if (k == 0) {
        if (!zero_here) out.push_back(x);
      } else {
        visit(k - 1, next, zero_here);
      }
    }
    x[k] = 0;
  }
};

}  // namespace

std::vector<IntVector> enumerate_ball(const UpperTriangular& r, double radius, std::size_t node_budget) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw Error(Errc::invalid_argument, "radius must be finite and nonnegative");
  Enumerator e(r, radius, node_budget);
  e.visit(r.dim() - 1, 0.0, true);
  return std::move(e.out);
}

}  // namespace smin
