#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gbound/cli.hpp"
#include "gbound/io.hpp"
#include "gbound/physics.hpp"
#include "test_support.hpp"

using namespace gbound;
using gbound::test::near;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gbound");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "gbound_test_io_cli";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string write_matrix(const std::string& name, const CMat& m) { return write(name, io::matrix_to_json(m).dump()); }

}  // namespace

TEST_CASE("matrix JSON round trip") {
  CMat m(2, 3);
  m << 1.0, cplx(0, 2), -3.5, cplx(1e-300, -4), 0.0, cplx(7, 7);
  const CMat back = io::matrix_from_json(io::parse_text(io::matrix_to_json(m).dump()));
  CHECK(back == m);
}

TEST_CASE("matrix JSON rejection") {
  const char* bad[] = {
      R"({"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0]]})",
      R"({"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1]]})",
      R"({"rows":0,"cols":2,"data":[]})",
      R"({"rows":1.5,"cols":1,"data":[[1,0]]})",
      R"({"rows":1,"cols":1,"data":[["1",0]]})",
      R"({"rows":1,"cols":1})",
      R"({"cols":1,"data":[[1,0]]})",
      R"([1,2])",
      R"({"rows":1,"cols":1,"data":[[1e999,0]]})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(io::matrix_from_json(io::parse_text(text)), ValidationError);
  }
  CHECK_THROWS_AS(io::parse_text("{not json"), ValidationError);
  CHECK_THROWS_AS(io::read_matrix_file(scratch() / "missing.json"), ValidationError);
}

TEST_CASE("dequantisation and barrier JSON") {
  const auto spec = io::dequant_from_json(io::parse_text(R"({"coeffs":[[1,0],[0,0.5]]})"));
  CHECK(spec.coeffs().size() == 2);
  CHECK(near(spec.coeffs()[1], cplx(0, 0.5), 0.0));
  CHECK(io::dequant_from_json(io::dequant_to_json(spec)).coeffs() == spec.coeffs());
  CHECK_THROWS_AS(io::dequant_from_json(io::parse_text(R"({"coeffs":[[1.5,0]]})")), ValidationError);

  const auto p = io::barrier_from_json(io::parse_text(R"({"m":1,"k":1,"V0":1,"a":1})"));
  CHECK(p.V0 == 1.0);
  CHECK_THROWS_AS(io::barrier_from_json(io::parse_text(R"({"m":1,"k":1,"V0":0.2,"a":1})")), ValidationError);
  CHECK_THROWS_AS(io::barrier_from_json(io::parse_text(R"({"m":1,"k":1,"a":1})")), ValidationError);
}

TEST_CASE("CSV flattening") {
  io::json j = {{"a", 1}, {"b", {{"c", "x,y"}, {"d", io::json::array({1.5, true})}}}};
  CHECK(io::to_csv(j) == "a,b.c,b.d.0,b.d.1\n1,\"x,y\",1.5,true\n");
}

TEST_CASE("finite-number guard") {
  io::json j = {{"x", 1.0}, {"y", {{"z", std::nan("")}}}};
  CHECK_THROWS_AS(io::require_finite_numbers(j), NumericalError);
}

TEST_CASE("coefficient lists") {
  const auto v = cli::parse_coeff_list("1, 0.5:-1,-0.25");
  REQUIRE(v.size() == 3);
  CHECK(v[1] == cplx(0.5, -1));
  CHECK(v[2] == cplx(-0.25, 0));
  CHECK_THROWS_AS(cli::parse_coeff_list("1,,2"), ValidationError);
  CHECK_THROWS_AS(cli::parse_coeff_list("x"), ValidationError);
  CHECK_THROWS_AS(cli::parse_coeff_list("nan"), ValidationError);
}

TEST_CASE("cli certify") {
  const std::string path = write_matrix("exdc.json", exdc_theta(0.5));
  const Run r = run({"certify", path, "--lambda", "0.42"});
  REQUIRE(r.code == 0);
  const auto j = io::parse_text(r.out);
  CHECK(near(j["window_lo"].get<double>(), 0.4, 1e-12));
  CHECK(near(j["window_hi"].get<double>(), 1.0 / 2.25, 1e-12));
  CHECK(j["classification_at"]["verdict"] == "in_G_minus_G_prime");
  CHECK(j["optimizer"]["seed"] == 42);
  CHECK(j["optimizer"]["restarts"] == 64);
  CHECK(j["rescaling"].contains("capacity"));

  const Run seeded = run({"--seed", "9", "--restarts", "5", "certify", path});
  REQUIRE(seeded.code == 0);
  CHECK(io::parse_text(seeded.out)["optimizer"]["seed"] == 9);
  CHECK(io::parse_text(seeded.out)["optimizer"]["restarts"] == 5);
}

TEST_CASE("cli forms") {
  const std::string id = write_matrix("identity2.json", CMat::Identity(2, 2));
  Run r = run({"forms", "--theta", id, "--a", "1,1", "--b", "1,1"});
  REQUIRE(r.code == 0);
  CHECK(near(io::parse_text(r.out)["C"].get<double>(), 2.0, 1e-15));

  r = run({"forms", "--theta", id, "--V", id, "--W", id});
  REQUIRE(r.code == 0);
  CHECK(near(io::parse_text(r.out)["Q"].get<double>(), 2.0, 1e-15));

  const std::string big = write_matrix("big.json", 2.0 * CMat::Identity(2, 2));
  r = run({"forms", "--theta", id, "--V", big, "--W", id});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error: validation:", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  r = run({"forms", "--theta", id, "--V", big, "--W", id, "--allow-nonrescaling"});
  REQUIRE(r.code == 0);
  CHECK(io::parse_text(r.out)["Q_membership_violated"] == true);

  const std::string ex = write_matrix("exdc_forms.json", exdc_theta(0.5));
  r = run({"forms", "--theta", ex, "--V", id, "--W", id, "--lambda", "0.44"});
  REQUIRE(r.code == 0);
  CHECK(io::parse_text(r.out)["necessary_condition"]["sufficient"] == false);

  CHECK(run({"forms", "--theta", id}).code == 2);
  CHECK(run({"forms", "--theta", id, "--a", "1,1,1", "--b", "1,1"}).code == 2);
}

TEST_CASE("cli tunnel") {
  Run r = run({"tunnel", "--m", "1", "--k", "1", "--V0", "1", "--a", "1"});
  REQUIRE(r.code == 0);
  auto j = io::parse_text(r.out);
  CHECK(near(j["amps"]["abs_B"].get<double>(), 0.761594, 1e-6));
  CHECK(near(j["amps"]["abs_C"].get<double>(), 0.648054, 1e-6));
  CHECK(j["exdc"]["window"]["empty"] == false);

  r = run({"tunnel", "--m", "1", "--k", "1", "--V0", "1", "--a", "1", "--exdc-B", "0.5"});
  REQUIRE(r.code == 0);
  j = io::parse_text(r.out);
  CHECK(near(j["exdc"]["window"]["lo"].get<double>(), 0.4, 1e-12));

  const std::string params = write("params.json", R"({"m":1,"k":1,"V0":1,"a":1})");
  r = run({"tunnel", "--params", params});
  REQUIRE(r.code == 0);
  CHECK(near(io::parse_text(r.out)["amps"]["abs_B"].get<double>(), 0.761594, 1e-6));

  CHECK(run({"tunnel", "--m", "1", "--k", "2", "--V0", "1", "--a", "1"}).code == 2);
  CHECK(run({"tunnel", "--m", "1"}).code == 2);
  CHECK(run({"tunnel", "--params", write("bad.json", "{")}).code == 2);
}

TEST_CASE("cli ultra") {
  Run r = run({"ultra", "--phase", "0.448799", "--xi", "0.17"});
  REQUIRE(r.code == 0);
  const auto j = io::parse_text(r.out);
  CHECK(near(j["Q_value"].get<double>(), 1.02, 1e-12));
  CHECK(j["complementarity_ok"] == true);
  CHECK(j["optimizer"]["seed"] == 42);
  CHECK(run({"ultra"}).code == 2);
  CHECK(run({"ultra", "--phase", "0.3", "--xi", "-1"}).code == 2);
}

TEST_CASE("cli csv output") {
  const Run r = run({"--format", "csv", "ultra", "--phase", "0.3", "--xi", "0.2"});
  REQUIRE(r.code == 0);
  const auto nl = r.out.find('\n');
  REQUIRE(nl != std::string::npos);
  const std::string header = r.out.substr(0, nl);
  CHECK(header.find("xi_window.lo") != std::string::npos);
  CHECK(header.find("optimizer.seed") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
  CHECK(run({"--format", "xml", "ultra", "--phase", "0.3"}).code == 2);
}

TEST_CASE("cli determinism") {
  const std::string path = write_matrix("det.json", exdc_theta(0.3) + CMat::Identity(2, 2) * cplx(0, 0.2));
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"certify", path},
           {"ultra", "--phase", "1.1"},
           {"tunnel", "--m", "2", "--k", "1.5", "--V0", "3", "--a", "0.7"}}) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cli usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"nope"}).code == 2);
  CHECK(run({"certify"}).code == 2);
  CHECK(run({"certify", (scratch() / "missing.json").string()}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("certify") != std::string::npos);
}
