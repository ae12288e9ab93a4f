#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smin {

enum class Errc {
  non_square,
  non_finite,
  dimension_mismatch,
  not_positive_definite,
  not_upper_triangular,
  invalid_delta,
  transform_overflow,
  dimension_too_large,
  radius_overflow,
  index_out_of_range,
  negative_input,
  precondition_violated,
  rank_deficient,
  capacity_too_small,
  generation_failed,
  invalid_argument,
  parse_error,
};

std::string_view errc_name(Errc code) noexcept;

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace smin
