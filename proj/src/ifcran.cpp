#include "smin/ifcran.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

namespace smin::ifcran {

namespace {

constexpr int max_generation_attempts = 100;
constexpr int max_doublings = 60;

void require_positive_finite(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(Errc::invalid_argument, std::string(what) + " must be finite and positive");
}

void require_nonnegative_finite(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw Error(Errc::invalid_argument, std::string(what) + " must be finite and >= 0");
}

std::string describe_tau(double tau) {
  std::ostringstream os;
  os.precision(17);
  os << "threshold tau = " << tau;
  return os.str();
}

double tau_squared_gap(double tau) {
  const double gap = tau * tau - 1.0;
  if (!(tau > 1.0) || !(gap > 0.0)) {
    throw Error(Errc::capacity_too_small, describe_tau(tau) + " must exceed 1");
  }
  return gap;
}

double max_witness_norm(const Matrix& basis, const UnimodularTransform& z) {
  double worst = 0.0;
  for (std::size_t j = 0; j < z.dim(); ++j) worst = std::max(worst, lattice_norm(basis, z.matrix().column(j)));
  return worst;
}

}  // namespace

// -------------------------------------------------------------- Instance

Instance::Instance(Matrix h, Matrix b, std::vector<std::size_t> blocks, double p, double c)
    : h_(std::move(h)), b_(std::move(b)), blocks_(std::move(blocks)), p_(p), c_(c) {
  require_positive_finite(p_, "power P");
  // C = 0 is accepted here and rejected by the solver as CapacityTooSmall.
  require_nonnegative_finite(c_, "capacity C");
  const std::size_t m = h_.rows();
  if (m < h_.cols()) throw Error(Errc::rank_deficient, "channel needs at least as many rows as users");
  if (!is_spd(h_.transpose() * h_)) throw Error(Errc::rank_deficient, "channel is not full column rank");
  if (b_.rows() != m || b_.cols() != m) throw Error(Errc::dimension_mismatch, "equalizer must be m x m");
  if (blocks_.empty() || std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0}) != m ||
      std::find(blocks_.begin(), blocks_.end(), std::size_t{0}) != blocks_.end()) {
    throw Error(Errc::dimension_mismatch, "block sizes must be positive and sum to m");
  }
  std::vector<std::size_t> owner(m);
  std::size_t row = 0;
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    for (std::size_t t = 0; t < blocks_[k]; ++t) owner[row++] = k;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (owner[i] != owner[j] && b_(i, j) != 0.0) {
        throw Error(Errc::precondition_violated, "equalizer has a nonzero entry outside its diagonal blocks");
      }
  qr_r_factor(b_);  // throws rank_deficient when B is singular
}

Instance Instance::with_capacity(double c) const { return Instance(h_, b_, blocks_, p_, c); }
Instance Instance::with_power(double p) const { return Instance(h_, b_, blocks_, p, c_); }

// ---------------------------------------------------------- enum names

std::string_view threshold_mode_name(ThresholdMode m) noexcept {
  switch (m) {
    case ThresholdMode::exp2c: return "exp2c";
    case ThresholdMode::expc: return "expc";
    case ThresholdMode::pow2c: return "pow2c";
  }
  return "unknown";
}

ThresholdMode parse_threshold_mode(std::string_view s) {
  if (s == "exp2c") return ThresholdMode::exp2c;
  if (s == "expc") return ThresholdMode::expc;
  if (s == "pow2c") return ThresholdMode::pow2c;
  throw Error(Errc::invalid_argument, "unknown threshold mode '" + std::string(s) + "'");
}

std::string_view log_base_name(LogBase b) noexcept { return b == LogBase::two ? "2" : "e"; }

LogBase parse_log_base(std::string_view s) {
  if (s == "2") return LogBase::two;
  if (s == "e") return LogBase::e;
  throw Error(Errc::invalid_argument, "unknown log base '" + std::string(s) + "'");
}

// ------------------------------------------------------------- builders

double threshold_of(double c, ThresholdMode mode) {
  switch (mode) {
    case ThresholdMode::exp2c: return std::exp(2.0 * c);
    case ThresholdMode::expc: return std::exp(c);
    case ThresholdMode::pow2c: return std::exp2(c);
  }
  throw Error(Errc::invalid_argument, "unknown threshold mode");
}

UpperTriangular build_f(const Instance& inst, double d) {
  require_positive_finite(d, "d");
  const Matrix bh = inst.b() * inst.h();
  const std::size_t m = inst.antennas();
  const SpdMatrix shifted(inst.b() * inst.b().transpose() + d * Matrix::identity(m));
  const Matrix k = bh.transpose() * cholesky_solve(cholesky(shifted), bh);
  const SpdMatrix inner((1.0 / inst.power()) * Matrix::identity(inst.users()) + k);
  return cholesky(inverse(inner));
}

SpdMatrix build_g_hat(const Instance& inst) {
  const Matrix bh = inst.b() * inst.h();
  return SpdMatrix(inst.power() * (bh * bh.transpose()) + inst.b() * inst.b().transpose());
}

UpperTriangular build_fbar(const Instance& inst, double d) {
  require_positive_finite(d, "d");
  const SpdMatrix g_hat = build_g_hat(inst);
  return cholesky(SpdMatrix((1.0 / d) * g_hat.matrix() + Matrix::identity(g_hat.dim())));
}

// ------------------------------------------------------------ bracket

double d_min_init(const Instance& inst, const Config& cfg) {
  const double gap = tau_squared_gap(threshold_of(inst.capacity(), cfg.threshold_mode));
  const UpperTriangular f_hat = cholesky(build_g_hat(inst));
  const double det_term = std::exp(2.0 * log_abs_det(f_hat) / static_cast<double>(f_hat.dim()));
  return det_term / gap;
}

UpperInit d_max_init(const Instance& inst, const Config& cfg) {
  const double tau = threshold_of(inst.capacity(), cfg.threshold_mode);
  const double tau_sq = tau * tau;
  tau_squared_gap(tau);
  const UpperTriangular f_hat = cholesky(build_g_hat(inst));
  ReducedBasis red = reduce(f_hat, cfg.reduction, cfg.delta);

  double d_max = 0.0;
  bool solvable = true;
  for (std::size_t j = 0; j < red.z.dim() && solvable; ++j) {
    const IntVector z = red.z.matrix().column(j);
    double z_sq = 0.0;
    for (std::int64_t v : z) z_sq += static_cast<double>(v) * static_cast<double>(v);
    if (z_sq >= tau_sq) {
      solvable = false;
      break;
    }
    const double a = lattice_norm(f_hat.matrix(), z);
    d_max = std::max(d_max, a * a / (tau_sq - z_sq));
  }
  if (solvable) return {d_max, std::move(red.z), false};

  // Some reduced column is already too long for any d: double d from d_min
  // until the reduced basis of Fbar(d) fits under tau.
  const double start = d_min_init(inst, cfg);
  double d = start;
  for (int k = 0; k <= max_doublings; ++k, d *= 2.0) {
    const UpperTriangular fbar = build_fbar(inst, d);
    ReducedBasis probe = reduce(fbar, cfg.reduction, cfg.delta);
    if (max_witness_norm(fbar.matrix(), probe.z) <= tau) return {d, std::move(probe.z), true};
  }
  throw Error(Errc::capacity_too_small, describe_tau(tau) + " not reached within 2^60 * d_min");
}

Bracket find_d(const Instance& inst, const Config& cfg) {
  if (!(cfg.bisect_tol > 0.0)) throw Error(Errc::invalid_argument, "bisect_tol must be positive");
  const double tau = threshold_of(inst.capacity(), cfg.threshold_mode);
  double d_min = d_min_init(inst, cfg);
  UpperInit init = d_max_init(inst, cfg);
  const double d_max = init.d_max;
  // d_min <= d_max holds exactly; only rounding can invert them.
  d_min = std::min(d_min, d_max);

  double lo = d_min;
  double hi = d_max;
  UnimodularTransform hi_z = init.z;
  int iterations = 0;
  while (hi - lo > cfg.bisect_tol * d_max && iterations < cfg.max_iterations) {
    const double mid = lo + 0.5 * (hi - lo);
    const UpperTriangular fbar = build_fbar(inst, mid);
    ReducedBasis red = reduce_from(fbar.matrix(), init.z, cfg.reduction, cfg.delta);
    ++iterations;
    if (max_witness_norm(fbar.matrix(), red.z) <= tau) {
      hi = mid;
      hi_z = std::move(red.z);
    } else {
      lo = mid;
    }
  }
  const double certificate = max_witness_norm(build_fbar(inst, hi).matrix(), hi_z);
  return Bracket{hi, d_min, d_max, iterations, tau, certificate, std::move(hi_z)};
}

double symmetric_rate(double p, const std::vector<double>& norms, LogBase base) {
  double worst = 0.0;
  for (double v : norms) worst = std::max(worst, v * v);
  const double ratio = p / worst;
  const double r = 0.5 * (base == LogBase::two ? std::log2(ratio) : std::log(ratio));
  return std::max(r, 0.0);
}

RateResult solve_rate(const Instance& inst, const Config& cfg) {
  Bracket br = find_d(inst, cfg);
  const UpperTriangular f = build_f(inst, br.d);
  const ReducedBasis red = reduce(f, cfg.reduction, cfg.delta);
  std::vector<double> norms;
  for (std::size_t j = 0; j < red.z.dim(); ++j) norms.push_back(lattice_norm(f.matrix(), red.z.matrix().column(j)));
  const double rate = symmetric_rate(inst.power(), norms, cfg.log_base);
  return RateResult{br.d,
                    br.d_min,
                    br.d_max,
                    red.z.matrix(),
                    std::move(norms),
                    rate,
                    br.iterations,
                    br.certificate,
                    br.threshold,
                    br.witness.matrix(),
                    cfg};
}

// ---------------------------------------------------------- generation

Instance generate_instance(std::size_t n, const std::vector<std::size_t>& blocks, double p, double c,
                           std::uint64_t seed, EqualizerMode mode) {
  const std::size_t m = std::accumulate(blocks.begin(), blocks.end(), std::size_t{0});
  if (n == 0 || m < n) throw Error(Errc::invalid_argument, "need 1 <= n <= sum(blocks)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < max_generation_attempts; ++attempt) {
    Matrix h(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) = normal(rng);
    Matrix b = Matrix::identity(m);
    if (mode == EqualizerMode::random) {
      std::size_t offset = 0;
      for (std::size_t size : blocks) {
        for (std::size_t i = 0; i < size; ++i)
          for (std::size_t j = 0; j < size; ++j) b(offset + i, offset + j) = normal(rng);
        offset += size;
      }
    }
    try {
      return Instance(std::move(h), std::move(b), blocks, p, c);
    } catch (const Error& e) {
      if (e.code() != Errc::rank_deficient) throw;
    }
  }
  throw Error(Errc::generation_failed, "no full-rank instance after 100 attempts");
}

}  // namespace smin::ifcran
