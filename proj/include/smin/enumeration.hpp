#pragma once

#include <cstddef>
#include <vector>

#include "smin/integer.hpp"
#include "smin/linalg.hpp"

namespace smin {

inline constexpr std::size_t default_node_budget = 10'000'000;

/// All nonzero integer x with ||R x|| <= radius, one representative per +/-x
/// pair (the last nonzero coordinate is positive). Depth-first enumeration
/// from the last coordinate down; throws radius_overflow once more than
/// `node_budget` tree nodes have been visited.
std::vector<IntVector> enumerate_ball(const UpperTriangular& r, double radius,
                                      std::size_t node_budget = default_node_budget);

}  // namespace smin
