#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "smin/integer.hpp"
#include "smin/linalg.hpp"
#include "smin/reduction.hpp"

namespace smin::ifcran {

/// Uplink instance: n users, m receive antennas split across base stations.
class Instance {
 public:
  /// h: m x n channel (full column rank). b: m x m equalizer, block diagonal
  /// per `blocks` (off-block entries exactly zero) and invertible.
  Instance(Matrix h, Matrix b, std::vector<std::size_t> blocks, double p, double c);

  const Matrix& h() const noexcept { return h_; }
  const Matrix& b() const noexcept { return b_; }
  const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }
  double power() const noexcept { return p_; }
  double capacity() const noexcept { return c_; }
  std::size_t users() const noexcept { return h_.cols(); }
  std::size_t antennas() const noexcept { return h_.rows(); }

  /// Copy with a different fronthaul capacity.
  Instance with_capacity(double c) const;
  /// Copy with a different power constant.
  Instance with_power(double p) const;

 private:
  Matrix h_;
  Matrix b_;
  std::vector<std::size_t> blocks_;
  double p_;
  double c_;
};

enum class ThresholdMode { exp2c, expc, pow2c };
enum class LogBase { two, e };

std::string_view threshold_mode_name(ThresholdMode m) noexcept;
ThresholdMode parse_threshold_mode(std::string_view s);
std::string_view log_base_name(LogBase b) noexcept;
LogBase parse_log_base(std::string_view s);

struct Config {
  double delta = default_delta;
  ThresholdMode threshold_mode = ThresholdMode::exp2c;
  LogBase log_base = LogBase::two;
  double bisect_tol = 1e-6;
  int max_iterations = 200;
  /// Reduction used for the initializer, every bisection probe and the final
  /// integer matrix.
  ReductionKind reduction = ReductionKind::plll_size;
};

/// Norm threshold tau the constraint lattice must meet: exp(2C), exp(C) or 2^C.
double threshold_of(double c, ThresholdMode mode = ThresholdMode::exp2c);

/// chol((P^{-1} I + (BH)^T (B B^T + d I)^{-1} BH)^{-1}), n x n.
UpperTriangular build_f(const Instance& inst, double d);
/// P (BH)(BH)^T + B B^T, m x m.
SpdMatrix build_g_hat(const Instance& inst);
/// chol(d^{-1} G_hat + I), m x m.
UpperTriangular build_fbar(const Instance& inst, double d);

/// |det chol(G_hat)|^{2/m} / (tau^2 - 1): below this d the determinant bound
/// already forces lambda_m(Fbar(d)) >= tau.
double d_min_init(const Instance& inst, const Config& cfg = {});

struct UpperInit {
  double d_max;
  /// Columns are m independent lattice vectors of Fbar(d_max) with norm <= tau.
  UnimodularTransform z;
  /// True when the closed form did not apply and geometric doubling was used.
  bool fallback;
};

/// Reduces chol(G_hat) once and solves max_i (z_i^T G_hat z_i / d + ||z_i||^2)
/// = tau^2 over the reduced columns z_i. Falls back to doubling from d_min
/// when some column already has ||z_i|| >= tau.
UpperInit d_max_init(const Instance& inst, const Config& cfg = {});

struct Bracket {
  double d;
  double d_min;
  double d_max;
  int iterations;
  double threshold;
  /// max_i ||Fbar(d) z_i|| for the recorded witness.
  double certificate;
  UnimodularTransform witness;
};

/// Bisects [d_min, d_max] for the smallest probed d whose reduced-basis
/// estimate of lambda_m(Fbar(d)) is at most tau. Every probe restarts the
/// reduction from the transform found by d_max_init.
Bracket find_d(const Instance& inst, const Config& cfg = {});

struct RateResult {
  double d_star;
  double d_min;
  double d_max;
  IntMatrix x_hat;
  std::vector<double> per_stream_norms;
  double sym_rate;
  int iterations;
  double lambda_n_fbar_at_d;
  double threshold;
  IntMatrix fbar_witness;
  Config config;
};

/// Full pipeline: find_d, then reduce F(d*) for the integer matrix and
/// evaluate the symmetric rate min_i 1/2 log+(P / ||F(d*) x_i||^2).
RateResult solve_rate(const Instance& inst, const Config& cfg = {});

/// 1/2 log+(P / max_i norm_i^2) in the configured base.
double symmetric_rate(double p, const std::vector<double>& norms, LogBase base);

enum class EqualizerMode { plain, random };

/// H has i.i.d. standard normal entries; B is identity (plain) or has random
/// invertible Gaussian blocks. Both are drawn from one mt19937_64 stream
/// seeded with `seed`. Retries up to 100 times for full column rank.
Instance generate_instance(std::size_t n, const std::vector<std::size_t>& blocks, double p, double c,
                           std::uint64_t seed, EqualizerMode mode = EqualizerMode::plain);

}  // namespace smin::ifcran
