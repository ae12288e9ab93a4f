#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "smin/integer.hpp"
#include "smin/linalg.hpp"
#include "smin/random.hpp"

namespace support {

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

inline bool close_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Gram of the transformed basis: Z^T G Z.
inline smin::Matrix transformed_gram(const smin::Matrix& g, const smin::IntMatrix& z) {
  const smin::Matrix zr = z.to_real();
  return zr.transpose() * g * zr;
}

inline smin::Rng rng_for(std::uint64_t stream) { return smin::Rng(smin::derive_seed(0x5eed, stream)); }

}  // namespace support
