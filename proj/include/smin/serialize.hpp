#pragma once

#include <string>

#include "json.hpp"

#include "smin/bounds.hpp"
#include "smin/ifcran.hpp"
#include "smin/integer.hpp"
#include "smin/linalg.hpp"
#include "smin/minima.hpp"
#include "smin/reduction.hpp"
#include "smin/verify.hpp"

namespace smin {

using Json = nlohmann::ordered_json;

// Matrices: {"rows": r, "cols": c, "data": [row-major entries]}. Readers
// reject missing fields, size mismatches and non-finite numbers with
// Errc::parse_error.

Json to_json(const Matrix& m);
Json to_json(const IntMatrix& m);
Matrix matrix_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);

/// {"values": [...], "witnesses": [[...], ...], "exact": bool, "search_radius": r}
Json to_json(const MinimaResult& m);
MinimaResult minima_from_json(const Json& j);

/// {"r": matrix, "z": matrix, "kind": "lll" | "plll+size" | "size", "delta": x}
Json to_json(const ReducedBasis& b);
ReducedBasis reduced_basis_from_json(const Json& j);

/// [{"index", "lower", "upper", "lower_source", "upper_source"}, ...]
Json to_json(const BoundsReport& r);
BoundsReport bounds_report_from_json(const Json& j);
/// {"sum": report, "inverse_first": report, "inverse_second": report}
Json to_json(const PairBoundsReport& r);
PairBoundsReport pair_bounds_from_json(const Json& j);

/// {"properties": [{"name", "checked", "passed"}, ...], "violations": k}
Json to_json(const VerifyReport& r);
VerifyReport verify_report_from_json(const Json& j);

/// {"h": matrix, "b": matrix, "blocks": [...], "p": x, "c": x}
Json to_json(const ifcran::Instance& inst);
ifcran::Instance instance_from_json(const Json& j);

Json to_json(const ifcran::Config& cfg);
ifcran::Config config_from_json(const Json& j);

/// Every RateResult field plus "config".
Json to_json(const ifcran::RateResult& r);
ifcran::RateResult rate_result_from_json(const Json& j);

/// Parses text, mapping syntax errors to Errc::parse_error.
Json parse_json(const std::string& text);
/// Canonical text form: two-space indent, trailing newline.
std::string dump_json(const Json& j);

}  // namespace smin
