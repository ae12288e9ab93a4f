#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "smin/linalg.hpp"

namespace smin {

struct PropertyTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t passed = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::size_t dim_lo = 2;
  std::size_t dim_hi = 4;
  unsigned workers = 1;
};

struct VerifyReport {
  std::vector<PropertyTally> properties;

  std::size_t violations() const;
};

/// Property sweep over seeded random instances plus the fixed worked
/// examples. Trial t draws from derive_seed(seed, t), so tallies do not
/// depend on the number of workers.
VerifyReport run_verification(const VerifyOptions& opts);

/// Relative slack used when comparing a certified bound against an exact value.
inline constexpr double bound_slack = 1e-9;

/// value <= limit * (1 + bound_slack), with an absolute floor at 0.
bool within_upper(double value, double limit) noexcept;

/// Worked example with G1 = diag(3,1), G2 = diag(1,8): exact minima and the
/// strict failure of the three generalizations to index 2. True iff all hold.
bool counterexample_fixture_holds();

/// Diagonal families where the sum and inverse bounds are attained with
/// equality; true iff every gap is within bound_slack relative.
bool tightness_fixture_holds();

}  // namespace smin
