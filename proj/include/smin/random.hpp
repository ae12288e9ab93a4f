#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "smin/linalg.hpp"

namespace smin {

/// All randomness in the toolkit is drawn from mt19937_64.
using Rng = std::mt19937_64;

/// Seed for stream `stream` under master seed `seed` (splitmix64 finalizer),
/// so per-trial draws do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols);

/// A^T A / n + floor * I with A standard Gaussian n x n.
SpdMatrix random_spd(Rng& rng, std::size_t n, double floor = 0.1);

/// Singular PSD matrix of the given rank (< n), A^T A with A rank x n.
SpdMatrix random_psd(Rng& rng, std::size_t n, std::size_t rank);

/// Cholesky factor of random_spd.
UpperTriangular random_basis(Rng& rng, std::size_t n);

/// Gaussian rows x cols matrix (rows >= cols) redrawn until A^T A is SPD.
Matrix random_full_column_rank(Rng& rng, std::size_t rows, std::size_t cols);

}  // namespace smin
