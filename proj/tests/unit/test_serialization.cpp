#include <doctest.h>

#include <cmath>
#include <limits>

#include "isl/errors.hpp"
#include "isl/forward.hpp"
#include "isl/serialization.hpp"

using namespace isl;

TEST_CASE("doubles use 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  const json j = {{"a", 0.1}, {"b", std::numeric_limits<double>::quiet_NaN()}, {"c", {1.0, 2.5}}};
  CHECK(dump_json(j) == "{\n  \"a\": 0.10000000000000001,\n  \"b\": null,\n  \"c\": [1, 2.5]\n}\n");
}

TEST_CASE("scattering data round trip") {
  const auto q = RadialPotential::square_well(-4.0, 1.0, 2.0, 0.01);
  const auto d = forward_data(q, UniformGrid(0.1, 0.1, 50));
  const auto back = scattering_from_json(json::parse(dump_json(to_json(d))));
  REQUIRE(back.S.size() == d.S.size());
  for (std::size_t i = 0; i < d.S.size(); ++i) CHECK(back.S[i] == d.S[i]);
  REQUIRE(back.J() == 1);
  CHECK(back.bound_states[0].k == d.bound_states[0].k);
  CHECK(back.bound_states[0].s == d.bound_states[0].s);
  CHECK(back.k_grid == d.k_grid);
}

TEST_CASE("malformed scattering json") {
  CHECK_THROWS_AS(scattering_from_json(json::parse(R"({"k_min": 0.1})")), FormatError);
  CHECK_THROWS_AS(scattering_from_json(json::parse(
                      R"({"k_min": 0.1, "k_step": 0.1, "S_re": [1, 1], "S_im": [0], "bound_states": []})")),
                  FormatError);
}

TEST_CASE("characterization report fields") {
  CharacterizationReport r;
  r.passed = true;
  const json j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"index", "index_expected", "symmetry_residual", "F_sup_norm", "F_L1_norm",
                                         "xFprime_L1_norm", "passed"});
}

TEST_CASE("csv layout") {
  CHECK(to_csv({"x", "q"}, {{0.0, 1.0}, {0.5, -2.0}}) == "x,q\n0,1\n0.5,-2\n");
  const auto q = RadialPotential::square_well(1.0, 0.5, 1.0, 0.5);
  CHECK(potential_csv(q) == "x,q\n0,1\n0.5,1\n1,0\n");
}
