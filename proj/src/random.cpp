#include "smin/random.hpp"

namespace smin {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = normal(rng);
  return a;
}

SpdMatrix random_spd(Rng& rng, std::size_t n, double floor) {
  const Matrix a = random_gaussian(rng, n, n);
  Matrix g = a.transpose() * a;
  g *= 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) += floor;
  return SpdMatrix(g);
}

SpdMatrix random_psd(Rng& rng, std::size_t n, std::size_t rank) {
  if (rank >= n) throw Error(Errc::invalid_argument, "singular PSD matrix needs rank < n");
  if (rank == 0) return SpdMatrix(Matrix(n, n), Definiteness::semi);
  const Matrix a = random_gaussian(rng, rank, n);
  return SpdMatrix(a.transpose() * a, Definiteness::semi);
}

UpperTriangular random_basis(Rng& rng, std::size_t n) { return cholesky(random_spd(rng, n)); }

Matrix random_full_column_rank(Rng& rng, std::size_t rows, std::size_t cols) {
  if (rows < cols) throw Error(Errc::invalid_argument, "full column rank needs rows >= cols");
  for (;;) {
    Matrix a = random_gaussian(rng, rows, cols);
    if (is_spd(a.transpose() * a)) return a;
  }
}

}  // namespace smin
