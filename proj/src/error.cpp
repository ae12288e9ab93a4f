#include "smin/error.hpp"

namespace smin {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::non_square: return "NonSquare";
    case Errc::non_finite: return "NonFinite";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_positive_definite: return "NotPositiveDefinite";
    case Errc::not_upper_triangular: return "NotUpperTriangular";
    case Errc::invalid_delta: return "InvalidDelta";
    case Errc::transform_overflow: return "TransformOverflow";
    case Errc::dimension_too_large: return "DimensionTooLarge";
    case Errc::radius_overflow: return "RadiusOverflow";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::negative_input: return "NegativeInput";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::capacity_too_small: return "CapacityTooSmall";
    case Errc::generation_failed: return "GenerationFailed";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace smin
