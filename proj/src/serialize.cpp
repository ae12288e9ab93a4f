#include "smin/serialize.hpp"

#include <cmath>

namespace smin {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::parse_error, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(std::string(what) + " must be finite");
  return v;
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::size_t count(const Json& j, const char* what) {
  const std::int64_t v = integer(j, what);
  if (v < 1) fail(std::string(what) + " must be positive");
  return static_cast<std::size_t>(v);
}

std::vector<double> number_array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(number(e, what));
  return out;
}

}  // namespace

Json to_json(const Matrix& m) {
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

Json to_json(const IntMatrix& m) {
  return Json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"data", std::vector<std::int64_t>(m.data().begin(), m.data().end())}};
}

Matrix matrix_from_json(const Json& j) {
  const std::size_t rows = count(field(j, "rows"), "rows");
  const std::size_t cols = count(field(j, "cols"), "cols");
  std::vector<double> data = number_array(field(j, "data"), "matrix entry");
  if (data.size() != rows * cols) fail("matrix data length does not match rows*cols");
  return Matrix(rows, cols, std::move(data));
}

IntMatrix int_matrix_from_json(const Json& j) {
  const std::size_t rows = count(field(j, "rows"), "rows");
  const std::size_t cols = count(field(j, "cols"), "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || data.size() != rows * cols) fail("integer matrix data length does not match rows*cols");
  std::vector<std::int64_t> out;
  for (const auto& e : data) out.push_back(integer(e, "integer matrix entry"));
  return IntMatrix(rows, cols, std::move(out));
}

Json to_json(const MinimaResult& m) {
  return Json{{"values", m.values}, {"witnesses", m.witnesses}, {"exact", m.exact}, {"search_radius", m.search_radius}};
}

MinimaResult minima_from_json(const Json& j) {
  MinimaResult m;
  m.values = number_array(field(j, "values"), "minimum");
  const Json& w = field(j, "witnesses");
  if (!w.is_array() || w.size() != m.values.size()) fail("witness count must match value count");
  for (const auto& v : w) {
    if (!v.is_array() || v.size() != m.values.size()) fail("witness length must match dimension");
    IntVector x;
    for (const auto& e : v) x.push_back(integer(e, "witness entry"));
    m.witnesses.push_back(std::move(x));
  }
  const Json& exact = field(j, "exact");
  if (!exact.is_boolean()) fail("exact must be a boolean");
  m.exact = exact.get<bool>();
  if (j.contains("search_radius")) m.search_radius = number(j["search_radius"], "search_radius");
  return m;
}

Json to_json(const ReducedBasis& b) {
  return Json{{"r", to_json(b.r.matrix())},
              {"z", to_json(b.z.matrix())},
              {"kind", reduction_kind_name(b.kind)},
              {"delta", b.delta}};
}

ReducedBasis reduced_basis_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) fail("kind must be a string");
  try {
    return ReducedBasis{UpperTriangular(matrix_from_json(field(j, "r"))),
                        UnimodularTransform::from_matrix(int_matrix_from_json(field(j, "z"))),
                        parse_reduction_kind(kind.get<std::string>()), number(field(j, "delta"), "delta")};
  } catch (const Error& e) {
    if (e.code() == Errc::parse_error) throw;
    fail(e.what());
  }
}

Json to_json(const BoundsReport& r) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const BoundEntry& e = r.entries[i];
    entries.push_back(Json{{"index", i + 1},
                           {"lower", e.lower},
                           {"upper", e.upper},
                           {"lower_source", bound_source_name(e.lower_source)},
                           {"upper_source", bound_source_name(e.upper_source)}});
  }
  return entries;
}

Json to_json(const PairBoundsReport& r) {
  return Json{{"sum", to_json(r.sum)},
              {"inverse_first", to_json(r.inverse_first)},
              {"inverse_second", to_json(r.inverse_second)}};
}

BoundsReport bounds_report_from_json(const Json& j) {
  if (!j.is_array()) fail("bounds report must be an array");
  BoundsReport r;
  for (const Json& e : j) {
    if (integer(field(e, "index"), "index") != static_cast<std::int64_t>(r.entries.size() + 1)) {
      fail("bounds report indices must run 1..n in order");
    }
    const Json& ls = field(e, "lower_source");
    const Json& us = field(e, "upper_source");
    if (!ls.is_string() || !us.is_string()) fail("bound sources must be strings");
    try {
      r.entries.push_back({number(field(e, "lower"), "lower"), number(field(e, "upper"), "upper"),
                           parse_bound_source(ls.get<std::string>()), parse_bound_source(us.get<std::string>())});
    } catch (const Error& err) {
      if (err.code() == Errc::parse_error) throw;
      fail(err.what());
    }
  }
  return r;
}

PairBoundsReport pair_bounds_from_json(const Json& j) {
  return {bounds_report_from_json(field(j, "sum")), bounds_report_from_json(field(j, "inverse_first")),
          bounds_report_from_json(field(j, "inverse_second"))};
}

Json to_json(const VerifyReport& r) {
  Json props = Json::array();
  for (const auto& p : r.properties) props.push_back(Json{{"name", p.name}, {"checked", p.checked}, {"passed", p.passed}});
  return Json{{"properties", props}, {"violations", r.violations()}};
}

VerifyReport verify_report_from_json(const Json& j) {
  const Json& props = field(j, "properties");
  if (!props.is_array()) fail("properties must be an array");
  VerifyReport r;
  for (const Json& p : props) {
    const Json& name = field(p, "name");
    if (!name.is_string()) fail("property name must be a string");
    const std::int64_t checked = integer(field(p, "checked"), "checked");
    const std::int64_t passed = integer(field(p, "passed"), "passed");
    if (checked < 0 || passed < 0 || passed > checked) fail("property counts are inconsistent");
    r.properties.push_back({name.get<std::string>(), static_cast<std::size_t>(checked), static_cast<std::size_t>(passed)});
  }
  if (integer(field(j, "violations"), "violations") != static_cast<std::int64_t>(r.violations())) {
    fail("violation count does not match the property tallies");
  }
  return r;
}

Json to_json(const ifcran::Instance& inst) {
  return Json{{"h", to_json(inst.h())},
              {"b", to_json(inst.b())},
              {"blocks", inst.blocks()},
              {"p", inst.power()},
              {"c", inst.capacity()}};
}

ifcran::Instance instance_from_json(const Json& j) {
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array()) fail("blocks must be an array");
  std::vector<std::size_t> sizes;
  for (const auto& b : blocks) sizes.push_back(count(b, "block size"));
  Matrix h = matrix_from_json(field(j, "h"));
  Matrix b = matrix_from_json(field(j, "b"));
  const double p = number(field(j, "p"), "p");
  const double c = number(field(j, "c"), "c");
  return ifcran::Instance(std::move(h), std::move(b), std::move(sizes), p, c);
}

Json to_json(const ifcran::Config& cfg) {
  return Json{{"delta", cfg.delta},
              {"threshold_mode", ifcran::threshold_mode_name(cfg.threshold_mode)},
              {"log_base", ifcran::log_base_name(cfg.log_base)},
              {"bisect_tol", cfg.bisect_tol},
              {"max_iterations", cfg.max_iterations},
              {"reduction", reduction_kind_name(cfg.reduction)}};
}

ifcran::Config config_from_json(const Json& j) {
  ifcran::Config cfg;
  auto text = [&](const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) fail(std::string(key) + " must be a string");
    return v.get<std::string>();
  };
  try {
    cfg.delta = number(field(j, "delta"), "delta");
    cfg.threshold_mode = ifcran::parse_threshold_mode(text("threshold_mode"));
    cfg.log_base = ifcran::parse_log_base(text("log_base"));
    cfg.bisect_tol = number(field(j, "bisect_tol"), "bisect_tol");
    cfg.max_iterations = static_cast<int>(integer(field(j, "max_iterations"), "max_iterations"));
    cfg.reduction = parse_reduction_kind(text("reduction"));
  } catch (const Error& e) {
    if (e.code() == Errc::parse_error) throw;
    fail(e.what());
  }
  return cfg;
}

Json to_json(const ifcran::RateResult& r) {
  return Json{{"d_star", r.d_star},
              {"d_min", r.d_min},
              {"d_max", r.d_max},
              {"x_hat", to_json(r.x_hat)},
              {"per_stream_norms", r.per_stream_norms},
              {"sym_rate", r.sym_rate},
              {"iterations", r.iterations},
              {"lambda_n_fbar_at_d", r.lambda_n_fbar_at_d},
              {"threshold", r.threshold},
              {"fbar_witness", to_json(r.fbar_witness)},
              {"config", to_json(r.config)}};
}

ifcran::RateResult rate_result_from_json(const Json& j) {
  ifcran::RateResult r;
  r.d_star = number(field(j, "d_star"), "d_star");
  r.d_min = number(field(j, "d_min"), "d_min");
  r.d_max = number(field(j, "d_max"), "d_max");
  r.x_hat = int_matrix_from_json(field(j, "x_hat"));
  r.per_stream_norms = number_array(field(j, "per_stream_norms"), "per_stream_norms");
  r.sym_rate = number(field(j, "sym_rate"), "sym_rate");
  r.iterations = static_cast<int>(integer(field(j, "iterations"), "iterations"));
  r.lambda_n_fbar_at_d = number(field(j, "lambda_n_fbar_at_d"), "lambda_n_fbar_at_d");
  r.threshold = number(field(j, "threshold"), "threshold");
  r.fbar_witness = int_matrix_from_json(field(j, "fbar_witness"));
  r.config = config_from_json(field(j, "config"));
  return r;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace smin
