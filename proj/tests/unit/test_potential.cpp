#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "isl/errors.hpp"
#include "isl/potential.hpp"

using namespace isl;
namespace fs = std::filesystem;

namespace {

fs::path write_tmp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("isl_test_potential_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("square well shape") {
  const auto q = RadialPotential::square_well(-4.0, 1.0, 2.0, 0.01);
  CHECK(q.support_radius() == doctest::Approx(1.0));
  CHECK(q.value(0.5) == -4.0);
  CHECK(q.value(1.5) == 0.0);
  CHECK(q.first_moment() == doctest::Approx(2.0));  // 4 * a^2 / 2
  CHECK_FALSE(q.support_fallback());
  REQUIRE(q.pieces().has_value());
}

TEST_CASE("zero potential falls back to x_max") {
  const auto q = RadialPotential::zero(2.0, 0.01);
  CHECK(q.is_zero());
  CHECK(q.support_fallback());
  CHECK(q.support_radius() == doctest::Approx(2.0));
}

TEST_CASE("piecewise constant keeps interior jumps") {
  const auto q = RadialPotential::piecewise_constant({{0.5, 1.0}, {2.0, -1.0}}, 2.0, 0.01);
  CHECK(q.value(0.25) == 2.0);
  CHECK(q.value(0.75) == -1.0);
  CHECK(q.support_radius() == doctest::Approx(1.0));
  CHECK_THROWS_AS(RadialPotential::piecewise_constant({{1.0, 0.5}, {1.0, 1.0}}, 2.0, 0.01), ValidationError);
  CHECK_THROWS_AS(RadialPotential::piecewise_constant({{3.0}, {1.0}}, 2.0, 0.01), ValidationError);
}

TEST_CASE("csv round trip") {
  const auto q = RadialPotential::from_function([](double x) { return std::exp(-x); }, 1.0, 2.0, 0.01);
  const fs::path p = fs::temp_directory_path() / "isl_test_potential_rt.csv";
  save_potential(q, p);
  const auto r = load_potential(p);
  REQUIRE(r.grid().size() == q.grid().size());
  for (std::size_t i = 0; i < q.grid().size(); ++i) CHECK(r.samples()[i] == q.samples()[i]);
  CHECK(r.support_radius() == doctest::Approx(1.0));
}

TEST_CASE("malformed csv is rejected") {
  CHECK_THROWS_AS(load_potential(write_tmp("hdr.csv", "a,b\n0,1\n0.1,1\n")), FormatError);
  CHECK_THROWS_AS(load_potential(write_tmp("num.csv", "x,q\n0,1\n0.1,abc\n")), FormatError);
  CHECK_THROWS_AS(load_potential(write_tmp("cx.csv", "x,q\n0,1\n0.1,1+2i\n")), NonRealError);
  CHECK_THROWS_AS(load_potential(write_tmp("uni.csv", "x,q\n0,1\n0.1,1\n0.3,1\n")), FormatError);
  CHECK_THROWS_AS(load_potential(write_tmp("start.csv", "x,q\n0.1,1\n0.2,1\n")), FormatError);
  CHECK_THROWS_AS(load_potential(fs::temp_directory_path() / "isl_no_such_file.csv"), ValidationError);
}

TEST_CASE("moments of a square well") {
  // Q_n = |q0| a^{n+1} / (n+1)
  const auto q = RadialPotential::square_well(2.0, 1.5, 2.0, 0.01);
  const auto m = moments(q, 20);
  for (const auto& r : m.reports) {
    CHECK(r.Q == doctest::Approx(2.0 * std::pow(1.5, r.n + 1) / (r.n + 1)).epsilon(1e-10));
  }
  CHECK(std::abs(m.growth_exponent_b) < 0.1);
  CHECK(m.infinitely_many_resonances_expected);
}

TEST_CASE("scaling") {
  const auto q = RadialPotential::square_well(1.0, 1.0, 2.0, 0.01).scaled(-3.0);
  CHECK(q.value(0.5) == -3.0);
}
