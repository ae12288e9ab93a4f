// Drives the smin executable end to end. SMIN_CLI and SMIN_WORKDIR are
// injected by the build.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "smin/random.hpp"
#include "smin/serialize.hpp"
#include "support.hpp"

using namespace smin;
namespace fs = std::filesystem;

namespace {

fs::path workdir() {
  const fs::path p = fs::path(SMIN_WORKDIR) / "cli_test_files";
  fs::create_directories(p);
  return p;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args, const std::string& err_file = "") {
  std::string cmd = std::string(SMIN_CLI) + " " + args;
  cmd += " >/dev/null";
  cmd += err_file.empty() ? " 2>/dev/null" : " 2>" + err_file;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write(const std::string& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

Json result_of(const std::string& p) { return parse_json(slurp(p)).at("result"); }

}  // namespace

TEST_CASE("reduce: identity and diagonal inputs are unchanged") {
  write(path("id.json"), dump_json(to_json(Matrix::identity(3))));
  REQUIRE(run("--cmd reduce --in " + path("id.json") + " --out " + path("id_out.json")) == 0);
  const ReducedBasis id = reduced_basis_from_json(result_of(path("id_out.json")));
  CHECK(id.z.matrix() == IntMatrix::identity(3));

  write(path("r3.json"), dump_json(to_json(Matrix::from_rows({{2, 0}, {0, 3}}))));
  REQUIRE(run("--cmd reduce --in " + path("r3.json") + " --out " + path("r3_out.json")) == 0);
  const ReducedBasis r3 = reduced_basis_from_json(result_of(path("r3_out.json")));
  CHECK(r3.r.matrix() == Matrix::from_rows({{2, 0}, {0, 3}}));
}

TEST_CASE("reduce: a random basis keeps its lattice") {
  Rng rng = support::rng_for(12000);
  const Matrix a = random_full_column_rank(rng, 5, 4);
  write(path("rand.json"), dump_json(to_json(a)));
  for (const char* kind : {"lll", "plll", "size"}) {
    REQUIRE(run(std::string("--cmd reduce --reduction ") + kind + " --in " + path("rand.json") + " --out " +
                path("rand_out.json")) == 0);
    const ReducedBasis out = reduced_basis_from_json(result_of(path("rand_out.json")));
    const Matrix g = support::transformed_gram(a.transpose() * a, out.z.matrix());
    CHECK(max_abs_diff(out.r.gram(), g) <= tol::fact * g.max_abs());
  }
}

TEST_CASE("smp and bounds outputs parse back") {
  write(path("hex.json"), dump_json(to_json(Matrix::from_rows({{1, 0.5}, {0, std::sqrt(3.0) / 2}}))));
  REQUIRE(run("--cmd smp --in " + path("hex.json") + " --out " + path("hex_out.json")) == 0);
  const MinimaResult m = minima_from_json(result_of(path("hex_out.json")));
  CHECK(support::close_rel(m.values[1], 1.0, 1e-15));

  REQUIRE(run("--cmd bounds --in " + path("hex.json") + " --out " + path("hexb.json")) == 0);
  CHECK(bounds_report_from_json(result_of(path("hexb.json"))).entries.size() == 2);

  write(path("pair.json"), dump_json(Json{{"g1", to_json(Matrix::diagonal(std::vector<double>{3, 1}))},
                                          {"g2", to_json(Matrix::diagonal(std::vector<double>{1, 8}))}}));
  REQUIRE(run("--cmd bounds --in " + path("pair.json") + " --out " + path("pairb.json")) == 0);
  const PairBoundsReport pr = pair_bounds_from_json(result_of(path("pairb.json")));
  CHECK(support::close_rel(pr.sum.entries[1].lower, 3.0, 1e-12));
}

TEST_CASE("verify exit codes") {
  CHECK(run("--cmd verify --trials 100 --dims 2..4 --seed 1 --out " + path("verify.json")) == 0);
  const VerifyReport rep = verify_report_from_json(result_of(path("verify.json")));
  CHECK(rep.violations() == 0);
  CHECK(run("--cmd verify --trials 0 --out " + path("verify0.json")) == 2);
  CHECK(run("--cmd verify --dims 2..40 --out " + path("verify0.json")) == 2);
  CHECK(run("--cmd verify --dims x --out " + path("verify0.json")) == 2);
}

TEST_CASE("ifcran: identity instance and infeasible capacity") {
  const ifcran::Instance inst(Matrix::identity(2), Matrix::identity(2), {2}, 1.0, std::log(3.0) / 4.0);
  write(path("inst.json"), dump_json(to_json(inst)));
  REQUIRE(run("--cmd ifcran --in " + path("inst.json") + " --out " + path("rate.json")) == 0);
  const ifcran::RateResult r = rate_result_from_json(result_of(path("rate.json")));
  CHECK(support::close_rel(r.d_star, 1.0, 1e-9));

  CHECK(run("--cmd ifcran --in " + path("inst.json") + " --c 1e-20 --out " + path("bad.json"), path("err.txt")) == 3);
  CHECK(slurp(path("err.txt")).find("tau") != std::string::npos);
}

TEST_CASE("ifcran grid CSV is reproducible") {
  const std::string args = "--cmd ifcran --n 3 --blocks 2,2 --equalizer random --p 10 --seed 5 --grid c=0.5:2:4";
  REQUIRE(run(args + " --out " + path("g1.csv")) == 0);
  REQUIRE(run(args + " --out " + path("g2.csv")) == 0);
  const std::string a = slurp(path("g1.csv"));
  CHECK(a == slurp(path("g2.csv")));
  CHECK(a.rfind("# smin-ifcran-grid v1", 0) == 0);
  CHECK(a.find("param,d_star,rate,iterations,wallclock_us\n") != std::string::npos);
  std::size_t rows = 0;
  for (char c : a) rows += c == '\n';
  CHECK(rows == 6);
}

TEST_CASE("usage and parse failures exit with 2") {
  write(path("broken.json"), "{\"rows\": 2,");
  CHECK(run("--cmd smp --in " + path("broken.json")) == 2);
  CHECK(run("--cmd smp --in " + path("does_not_exist.json")) == 2);
  CHECK(run("--cmd smp") == 2);
  CHECK(run("--cmd nonsense") == 2);
  CHECK(run("") == 2);
  CHECK(run("--cmd reduce --delta 2 --in " + path("id.json") + " --out " + path("x.json")) == 2);
  // A singular basis is a numeric failure.
  write(path("sing.json"), dump_json(to_json(Matrix::from_rows({{1, 2}, {2, 4}}))));
  CHECK(run("--cmd smp --in " + path("sing.json")) == 3);
  write(path("nan.json"), R"({"rows": 1, "cols": 1, "data": [null]})");
  CHECK(run("--cmd smp --in " + path("nan.json")) == 2);
}

TEST_CASE("gen writes a loadable instance") {
  REQUIRE(run("--cmd gen --n 3 --blocks 2,2 --c 1 --p 5 --seed 9 --equalizer random --out " + path("gen.json")) == 0);
  const ifcran::Instance inst = instance_from_json(parse_json(slurp(path("gen.json"))));
  CHECK(inst.users() == 3);
  CHECK(inst.antennas() == 4);
  CHECK(inst.power() == 5.0);
}
