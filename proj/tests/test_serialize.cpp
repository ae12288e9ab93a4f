#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "smin/bounds.hpp"
#include "smin/ifcran.hpp"
#include "smin/minima.hpp"
#include "smin/random.hpp"
#include "smin/serialize.hpp"
#include "smin/verify.hpp"
#include "support.hpp"

using namespace smin;

namespace {

void check_parse_error(const std::string& text) {
  try {
    matrix_from_json(parse_json(text));
    FAIL("accepted: " << text);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
  }
}

template <class T, class Parse>
void check_bytes_round_trip(const T& value, Parse parse) {
  const std::string first = dump_json(to_json(value));
  const std::string second = dump_json(to_json(parse(parse_json(first))));
  CHECK(first == second);
}

}  // namespace

TEST_CASE("matrix JSON round-trips bit-exactly") {
  Rng rng = support::rng_for(9000);
  const Matrix m = random_gaussian(rng, 3, 4);
  const Matrix back = matrix_from_json(parse_json(dump_json(to_json(m))));
  CHECK(back == m);
  const IntMatrix z = IntMatrix::from_rows({{1, -2}, {0, 7}});
  CHECK(int_matrix_from_json(parse_json(dump_json(to_json(z)))) == z);
}

TEST_CASE("malformed matrices are parse errors") {
  check_parse_error(R"({"rows": 1, "cols": 2, "data": [1, null]})");
  check_parse_error(R"({"rows": 1, "cols": 2, "data": [1]})");
  check_parse_error(R"({"rows": 1, "cols": 2, "data": [1, "x"]})");
  check_parse_error(R"({"rows": 0, "cols": 0, "data": []})");
  check_parse_error(R"({"rows": 1, "data": [1]})");
  check_parse_error(R"({"rows": 1, "cols": 1, "data": [1e999]})");
  check_parse_error(R"([1, 2])");
  CHECK_THROWS_AS(parse_json("{not json"), Error);
  // NaN and infinity have no JSON spelling; the writer emits null, which the reader rejects.
  Json j = to_json(Matrix::identity(1));
  j["data"][0] = std::nan("");
  CHECK_THROWS_AS(matrix_from_json(parse_json(dump_json(j))), Error);
  j["data"][0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(matrix_from_json(j), Error);
}

TEST_CASE("module results round-trip byte for byte") {
  Rng rng = support::rng_for(9100);
  const UpperTriangular r = random_basis(rng, 5);
  check_bytes_round_trip(solve_smp(r), minima_from_json);
  check_bytes_round_trip(plll_reduce(r), reduced_basis_from_json);
  check_bytes_round_trip(lll_reduce(r), reduced_basis_from_json);
  check_bytes_round_trip(basis_bounds(r), bounds_report_from_json);
  check_bytes_round_trip(pair_bounds(random_spd(rng, 3), random_spd(rng, 3)), pair_bounds_from_json);

  const ifcran::Instance inst = ifcran::generate_instance(3, {2, 2}, 10.0, 1.2, 77, ifcran::EqualizerMode::random);
  check_bytes_round_trip(inst, instance_from_json);
  ifcran::Config cfg;
  cfg.log_base = ifcran::LogBase::e;
  cfg.threshold_mode = ifcran::ThresholdMode::pow2c;
  cfg.reduction = ReductionKind::lll;
  check_bytes_round_trip(cfg, config_from_json);
  check_bytes_round_trip(ifcran::solve_rate(inst), rate_result_from_json);

  VerifyOptions opts;
  opts.trials = 3;
  check_bytes_round_trip(run_verification(opts), verify_report_from_json);
}

TEST_CASE("invalid module payloads are rejected") {
  // Non-unimodular transform.
  Json rb = to_json(lll_reduce(UpperTriangular(Matrix::identity(2))));
  rb["z"]["data"] = Json::array({2, 0, 0, 1});
  CHECK_THROWS_AS(reduced_basis_from_json(rb), Error);
  rb = to_json(lll_reduce(UpperTriangular(Matrix::identity(2))));
  rb["kind"] = "bkz";
  CHECK_THROWS_AS(reduced_basis_from_json(rb), Error);

  Json inst = to_json(ifcran::generate_instance(2, {2}, 1.0, 1.0, 1));
  inst["p"] = -1.0;
  CHECK_THROWS_AS(instance_from_json(inst), Error);

  Json vr = to_json(run_verification(VerifyOptions{1, 1, 2, 2, 1}));
  vr["violations"] = 5;
  CHECK_THROWS_AS(verify_report_from_json(vr), Error);

  Json br = to_json(basis_bounds(UpperTriangular(Matrix::identity(2))));
  br[0]["lower_source"] = "guess";
  CHECK_THROWS_AS(bounds_report_from_json(br), Error);
}

TEST_CASE("dump format") {
  const std::string s = dump_json(Json{{"a", 1}});
  CHECK(s == "{\n  \"a\": 1\n}\n");
}
