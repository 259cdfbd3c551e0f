#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "isl/errors.hpp"
#include "isl/potential.hpp"
#include "isl/serialization.hpp"

using namespace isl;
namespace fs = std::filesystem;

namespace {

std::string make_well(const std::string& name, double q0) {
  const std::string path = "cli_inputs/" + name + ".csv";
  fs::create_directories("cli_inputs");
  save_potential(RadialPotential::square_well(q0, 1.0, 2.0, 0.01), path);
  return path;
}

cli::ExperimentConfig config(const std::string& command, const std::string& potential, const std::string& out) {
  cli::ExperimentConfig c;
  c.command = command;
  c.potential = potential;
  c.out = "cli_out/" + out;
  return c;
}

json report(const cli::ExperimentConfig& c) { return json::parse(read_text(c.out + "/report.json")); }

}  // namespace

TEST_CASE("config text parsing") {
  cli::ExperimentConfig c;
  cli::apply_config_text(c, "# comment\nx_max = 3   # trailing\nmethods = marchenko, gl\n\ncutoffs = 2,4\n");
  CHECK(c.x_max == 3.0);
  CHECK(c.methods == std::vector<std::string>{"marchenko", "gl"});
  CHECK(c.cutoffs == std::vector<double>{2.0, 4.0});
  CHECK_THROWS_AS(cli::apply_config_text(c, "nonsense = 1\n"), ValidationError);
  CHECK_THROWS_AS(cli::apply_config_text(c, "x_max = abc\n"), ValidationError);
  CHECK_THROWS_AS(cli::apply_config_text(c, "x_max\n"), ValidationError);
}

TEST_CASE("validation failures exit with 2") {
  std::ostringstream err;
  auto c = config("roundtrip", "", "v1");
  CHECK(cli::run(c, err) == cli::kExitValidation);
  c = config("forward", make_well("b", 1.0), "v2");
  c.x_step = -0.01;
  CHECK(cli::run(c, err) == cli::kExitValidation);
  c = config("forward", "cli_inputs/missing.csv", "v3");
  CHECK(cli::run(c, err) == cli::kExitValidation);
  c = config("roundtrip", make_well("b", 1.0), "v4");
  c.methods = {"fourier"};
  CHECK(cli::run(c, err) == cli::kExitValidation);
}

TEST_CASE("zero potential round trip") {
  fs::create_directories("cli_inputs");
  save_potential(RadialPotential::zero(2.0, 0.01), "cli_inputs/zero.csv");
  auto c = config("roundtrip", "cli_inputs/zero.csv", "zero");
  c.k_max = 20;
  std::ostringstream err;
  REQUIRE(cli::run(c, err) == cli::kExitOk);
  const json r = report(c)["results"];
  for (const char* m : {"marchenko", "gl", "krein"}) CHECK(r["errors"][m]["sup"].get<double>() <= 1e-8);
  CHECK(fs::exists(c.out + "/roundtrip.csv"));
}

TEST_CASE("krein gate names the failing condition") {
  auto c = config("invert-krein", make_well("w4", -4.0), "krein_gate");
  c.k_max = 20;
  std::ostringstream err;
  CHECK(cli::run(c, err) == cli::kExitValidation);
  CHECK(err.str().find("without bound states") != std::string::npos);
}

TEST_CASE("roundtrip on the barrier with default grids") {
  auto c = config("roundtrip", make_well("b", 1.0), "barrier");
  std::ostringstream err;
  REQUIRE(cli::run(c, err) == cli::kExitOk);
  const json r = report(c);
  CHECK(r["config"]["potential"] == c.potential);
  for (const char* m : {"marchenko", "gl", "krein"}) CHECK(r["results"]["errors"][m]["sup"].get<double>() <= 5e-2);
  for (const auto& p : r["results"]["disagreements"]) CHECK(p["sup"].get<double>() <= 2e-2);
}

TEST_CASE("roundtrip on the bound-state well skips krein") {
  auto c = config("roundtrip", make_well("w4", -4.0), "well");
  std::ostringstream err;
  REQUIRE(cli::run(c, err) == cli::kExitOk);
  const json r = report(c)["results"];
  CHECK(r["J"] == 1);
  CHECK_FALSE(r["errors"].contains("krein"));
  REQUIRE(r["notes"].size() == 1);
  CHECK(r["disagreements"][0]["sup"].get<double>() <= 2e-2);
}

TEST_CASE("invert-marchenko from a data file") {
  std::ostringstream err;
  auto f = config("forward", make_well("w4", -4.0), "fwd");
  REQUIRE(cli::run(f, err) == cli::kExitOk);
  auto c = config("invert-marchenko", "", "from_data");
  c.data = f.out + "/scattering.json";
  REQUIRE(cli::run(c, err) == cli::kExitOk);
  const json ch = json::parse(read_text(c.out + "/characterization.json"));
  CHECK(ch["passed"] == true);
  CHECK(fs::exists(c.out + "/kernel_marchenko.csv"));
}

TEST_CASE("reports are byte-identical across runs") {
  std::ostringstream err;
  auto a = config("born-demo", "", "det_a");
  auto b = config("born-demo", "", "det_b");
  b.out = a.out;
  REQUIRE(cli::run(a, err) == cli::kExitOk);
  const std::string first = read_text(a.out + "/report.json");
  REQUIRE(cli::run(b, err) == cli::kExitOk);
  CHECK(read_text(b.out + "/report.json") == first);
}

TEST_CASE("ambiguity with a tiny budget exits 3 and still writes the pair") {
  auto c = config("ambiguity", "", "amb");
  c.budget = 30;
  c.restarts = 1;
  c.target_gap = 1e-4;
  c.L = 15;
  std::ostringstream err;
  CHECK(cli::run(c, err) == cli::kExitNumerical);
  CHECK(fs::exists(c.out + "/pair.json"));
  CHECK(report(c)["results"]["budget_exhausted"] == true);
}
