// smin: command-line front end for lattice reduction, exact successive
// minima, bound reports, property sweeps and the IF C-RAN rate solver.
//
// Exit codes: 0 success, 1 property violation, 2 usage or parse error,
// 3 numeric failure or infeasible instance.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "smin/bounds.hpp"
#include "smin/ifcran.hpp"
#include "smin/minima.hpp"
#include "smin/reduction.hpp"
#include "smin/serialize.hpp"
#include "smin/verify.hpp"

namespace {

using smin::Json;
namespace ifc = smin::ifcran;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

constexpr const char* csv_version = "smin-ifcran-grid v1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Grid {
  std::string param;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 0;

  double at(std::size_t k) const {
    if (steps == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
};

struct RunConfig {
  std::string command;
  std::string in;
  std::string out;
  std::uint64_t seed = 1;
  double delta = smin::default_delta;
  std::string log_base = "2";
  std::string threshold_mode = "exp2c";
  std::size_t trials = 100;
  std::string dims = "2..4";
  std::string grid;
  std::string reduction;
  std::size_t n = 2;
  std::string blocks;
  double p = 1.0;
  std::optional<double> c;
  std::optional<double> p_override;
  std::string equalizer = "plain";
  double bisect_tol = 1e-6;
  unsigned workers = 1;
  bool timing = false;

  // Everything that shapes the output; the output path itself is excluded.
  Json to_json() const {
    Json j{{"command", command}, {"in", in}, {"seed", seed}, {"delta", delta}, {"log_base", log_base},
           {"threshold_mode", threshold_mode}};
    if (command == "verify") {
      j["trials"] = trials;
      j["dims"] = dims;
      j["workers"] = workers;
    }
    if (command == "reduce") j["reduction"] = reduction.empty() ? "lll" : reduction;
    if (command == "ifcran" || command == "gen") {
      j["reduction"] = reduction.empty() ? "plll+size" : reduction;
      j["n"] = n;
      j["blocks"] = blocks;
      j["p"] = p_override ? *p_override : p;
      j["c"] = c ? Json(*c) : Json(nullptr);
      j["equalizer"] = equalizer;
      j["bisect_tol"] = bisect_tol;
      j["grid"] = grid;
      j["timing"] = timing;
    }
    return j;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + cfg.out + "'");
  f << text;
}

Json load_input(const RunConfig& cfg) {
  if (cfg.in.empty()) throw UsageError("--in is required for '" + cfg.command + "'");
  return smin::parse_json(read_file(cfg.in));
}

// Upper-triangular input with a positive diagonal is used as is; anything
// else is treated as a basis and triangularized by QR.
smin::UpperTriangular as_basis(const smin::Matrix& m) {
  if (m.is_square()) {
    try {
      return smin::UpperTriangular(m);
    } catch (const smin::Error& e) {
      if (e.code() != smin::Errc::not_upper_triangular) throw;
    }
  }
  return smin::qr_r_factor(m);
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const std::size_t v = std::stoul(s);
      return {v, v};
    }
    return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("--dims expects a..b, got '" + s + "'");
  }
}

Grid parse_grid(const std::string& s) {
  Grid g;
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw UsageError("--grid expects param=lo:hi:steps");
  g.param = s.substr(0, eq);
  if (g.param != "c" && g.param != "p" && g.param != "snr_db") {
    throw UsageError("--grid parameter must be c, p or snr_db");
  }
  std::istringstream rest(s.substr(eq + 1));
  std::string lo, hi, steps;
  if (!std::getline(rest, lo, ':') || !std::getline(rest, hi, ':') || !std::getline(rest, steps)) {
    throw UsageError("--grid expects param=lo:hi:steps");
  }
  try {
    g.lo = std::stod(lo);
    g.hi = std::stod(hi);
    g.steps = std::stoul(steps);
  } catch (const std::exception&) {
    throw UsageError("--grid has a malformed number");
  }
  if (g.steps == 0) throw UsageError("--grid needs at least one step");
  return g;
}

std::vector<std::size_t> parse_blocks(const std::string& s, std::size_t n) {
  if (s.empty()) return {n};
  std::vector<std::size_t> out;
  std::istringstream in(s);
  std::string tok;
  try {
    while (std::getline(in, tok, ',')) out.push_back(std::stoul(tok));
  } catch (const std::exception&) {
    throw UsageError("--blocks expects comma-separated sizes");
  }
  return out;
}

ifc::Config solver_config(const RunConfig& cfg) {
  ifc::Config c;
  c.delta = cfg.delta;
  c.log_base = ifc::parse_log_base(cfg.log_base);
  c.threshold_mode = ifc::parse_threshold_mode(cfg.threshold_mode);
  c.bisect_tol = cfg.bisect_tol;
  c.reduction = smin::parse_reduction_kind(cfg.reduction.empty() ? "plll+size" : cfg.reduction);
  return c;
}

ifc::Instance load_or_generate(const RunConfig& cfg) {
  if (!cfg.in.empty()) {
    ifc::Instance inst = smin::instance_from_json(load_input(cfg));
    if (cfg.c) inst = inst.with_capacity(*cfg.c);
    if (cfg.p_override) inst = inst.with_power(*cfg.p_override);
    return inst;
  }
  if (!cfg.c) throw UsageError("--c is required when no instance file is given");
  const auto mode = cfg.equalizer == "random" ? ifc::EqualizerMode::random : ifc::EqualizerMode::plain;
  return ifc::generate_instance(cfg.n, parse_blocks(cfg.blocks, cfg.n), cfg.p_override ? *cfg.p_override : cfg.p,
                                *cfg.c, cfg.seed, mode);
}

// ------------------------------------------------------------- commands

int cmd_reduce(const RunConfig& cfg) {
  const smin::UpperTriangular r = as_basis(smin::matrix_from_json(load_input(cfg)));
  const auto kind = smin::parse_reduction_kind(cfg.reduction.empty() ? "lll" : cfg.reduction);
  const smin::ReducedBasis out = smin::reduce(r, kind, cfg.delta);
  write_output(cfg, smin::dump_json(Json{{"config", cfg.to_json()}, {"result", smin::to_json(out)}}));
  return exit_ok;
}

int cmd_smp(const RunConfig& cfg) {
  const smin::UpperTriangular r = as_basis(smin::matrix_from_json(load_input(cfg)));
  const smin::MinimaResult m = smin::solve_smp(r);
  write_output(cfg, smin::dump_json(Json{{"config", cfg.to_json()}, {"result", smin::to_json(m)}}));
  return exit_ok;
}

int cmd_bounds(const RunConfig& cfg) {
  const Json input = load_input(cfg);
  Json result;
  if (input.is_object() && input.contains("g1") && input.contains("g2")) {
    const smin::SpdMatrix g1(smin::matrix_from_json(input["g1"]));
    const smin::SpdMatrix g2(smin::matrix_from_json(input["g2"]));
    result = smin::to_json(smin::pair_bounds(g1, g2));
  } else {
    result = smin::to_json(smin::basis_bounds(as_basis(smin::matrix_from_json(input))));
  }
  write_output(cfg, smin::dump_json(Json{{"config", cfg.to_json()}, {"result", result}}));
  return exit_ok;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.trials == 0) throw UsageError("--trials must be at least 1");
  const auto [lo, hi] = parse_dims(cfg.dims);
  smin::VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.trials = cfg.trials;
  opts.dim_lo = lo;
  opts.dim_hi = hi;
  opts.workers = cfg.workers;
  const smin::VerifyReport report = smin::run_verification(opts);
  write_output(cfg, smin::dump_json(Json{{"config", cfg.to_json()}, {"result", smin::to_json(report)}}));
  if (report.violations() > 0) {
    std::cerr << "verify: " << report.violations() << " property violation(s)\n";
    return exit_violation;
  }
  return exit_ok;
}

int cmd_gen(const RunConfig& cfg) {
  const ifc::Instance inst = load_or_generate(cfg);
  Json j = smin::to_json(inst);
  j["config"] = cfg.to_json();
  write_output(cfg, smin::dump_json(j));
  return exit_ok;
}

int cmd_ifcran_grid(const RunConfig& cfg, const ifc::Instance& base, const ifc::Config& solver) {
  const Grid grid = parse_grid(cfg.grid);
  std::ostringstream csv;
  csv.precision(17);
  csv << "# " << csv_version << " param=" << grid.param << " config=" << cfg.to_json().dump() << "\n";
  csv << "param,d_star,rate,iterations,wallclock_us\n";
  bool infeasible = false;
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double v = grid.at(k);
    csv << v << ",";
    try {
      ifc::Instance inst = grid.param == "c" ? base.with_capacity(v)
                           : grid.param == "p" ? base.with_power(v)
                                               : base.with_power(std::pow(10.0, v / 10.0));
      const auto t0 = std::chrono::steady_clock::now();
      const ifc::RateResult r = ifc::solve_rate(inst, solver);
      const auto t1 = std::chrono::steady_clock::now();
      csv << r.d_star << "," << r.sym_rate << "," << r.iterations << ",";
      if (cfg.timing) {
        csv << std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
      } else {
        csv << "NA";
      }
      csv << "\n";
    } catch (const smin::Error& e) {
      if (e.code() != smin::Errc::capacity_too_small) throw;
      std::cerr << "ifcran: " << e.what() << "\n";
      infeasible = true;
      csv << "NA,NA,NA,NA\n";
    }
  }
  write_output(cfg, csv.str());
  return infeasible ? exit_numeric : exit_ok;
}

int cmd_ifcran(const RunConfig& cfg) {
  const ifc::Config solver = solver_config(cfg);
  if (!cfg.grid.empty()) {
    // Grid over c needs no --c; fill a placeholder capacity for loading.
    RunConfig with_c = cfg;
    if (!with_c.c && with_c.in.empty()) with_c.c = 1.0;
    return cmd_ifcran_grid(cfg, load_or_generate(with_c), solver);
  }
  const ifc::Instance inst = load_or_generate(cfg);
  const ifc::RateResult r = ifc::solve_rate(inst, solver);
  write_output(cfg, smin::dump_json(Json{{"config", cfg.to_json()}, {"result", smin::to_json(r)}}));
  return exit_ok;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "reduce") return cmd_reduce(cfg);
  if (cfg.command == "smp") return cmd_smp(cfg);
  if (cfg.command == "bounds") return cmd_bounds(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  if (cfg.command == "ifcran") return cmd_ifcran(cfg);
  if (cfg.command == "gen") return cmd_gen(cfg);
  throw UsageError("unknown command '" + cfg.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice successive minima toolkit and IF C-RAN rate solver"};
  RunConfig cfg;
  app.add_option("--cmd", cfg.command, "Command to run")
      ->required()
      ->check(CLI::IsMember({"reduce", "smp", "bounds", "verify", "ifcran", "gen"}));
  app.add_option("--in", cfg.in, "Input JSON file (matrix, SPD pair or instance)");
  app.add_option("--out", cfg.out, "Output file (stdout when omitted)");
  app.add_option("--seed", cfg.seed, "Master seed for every random draw");
  app.add_option("--delta", cfg.delta, "LLL parameter in (1/4, 1]");
  app.add_option("--log-base", cfg.log_base, "Rate logarithm base")->check(CLI::IsMember({"2", "e"}));
  app.add_option("--threshold-mode", cfg.threshold_mode, "Constraint threshold: exp(2C), exp(C) or 2^C")
      ->check(CLI::IsMember({"exp2c", "expc", "pow2c"}));
  app.add_option("--trials", cfg.trials, "Random trials for verify");
  app.add_option("--dims", cfg.dims, "Dimension range a..b for verify");
  app.add_option("--grid", cfg.grid, "Sweep param=lo:hi:steps with param in {c, p, snr_db}; writes CSV");
  app.add_option("--reduction", cfg.reduction, "Reduction: lll, plll or size")
      ->check(CLI::IsMember({"lll", "plll", "plll+size", "size"}));
  app.add_option("--n", cfg.n, "Users (columns of H) for generated instances");
  app.add_option("--blocks", cfg.blocks, "Comma-separated equalizer block sizes (default: one block of n)");
  app.add_option("--p", cfg.p_override, "Power constant P");
  app.add_option("--c", cfg.c, "Fronthaul capacity C");
  app.add_option("--equalizer", cfg.equalizer, "Equalizer blocks: plain (identity) or random")
      ->check(CLI::IsMember({"plain", "random"}));
  app.add_option("--bisect-tol", cfg.bisect_tol, "Relative bisection tolerance");
  app.add_option("--workers", cfg.workers, "Worker threads for verify");
  app.add_flag("--timing", cfg.timing, "Record wall-clock per grid row (output is then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    return dispatch(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const smin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool usage = e.code() == smin::Errc::parse_error || e.code() == smin::Errc::invalid_argument ||
                       e.code() == smin::Errc::invalid_delta;
    return usage ? exit_usage : exit_numeric;
  }
}
