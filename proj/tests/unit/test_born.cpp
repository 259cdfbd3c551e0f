#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isl/born.hpp"
#include "isl/phase_shifts.hpp"

using namespace isl;
using std::numbers::pi;

TEST_CASE("transform of the unit ball") {
  // 4 pi (sin xi - xi cos xi) / xi^3
  const auto q = RadialPotential::square_well(1.0, 1.0, 1.5, 0.01);
  for (double xi : {0.5, 3.0, 20.0, 55.0}) {
    CHECK(born_amplitude(q, xi) ==
          doctest::Approx(4 * pi * (std::sin(xi) - xi * std::cos(xi)) / (xi * xi * xi)).epsilon(1e-10));
  }
  CHECK(born_amplitude(q, 0.0) == doctest::Approx(4 * pi / 3).epsilon(1e-12));
}

TEST_CASE("noise-free inversion converges with the cutoff") {
  const auto q = born_bump(1.0);
  const auto s = born_data(q, UniformGrid::covering(0.0, 60.0, 0.05));
  const UniformGrid rg = q.grid();
  const double e20 = relative_sup_error(born_invert(s, 20.0, 0.0, 1, rg), q);
  const double e50 = relative_sup_error(born_invert(s, 50.0, 0.0, 1, rg), q);
  CHECK(e50 < e20);
  CHECK(e50 < 1e-3);
}

TEST_CASE("noisy sweep has an interior optimum") {
  const auto q = born_bump(1.0);
  const auto s = born_data(q, UniformGrid::covering(0.0, 60.0, 0.05));
  std::vector<double> cutoffs;
  for (int c = 2; c <= 60; c += 2) cutoffs.push_back(c);
  const auto rep = born_sweep(q, 1.0, s, cutoffs, 1e-3, 1);
  CHECK(rep.cutoff > cutoffs.front());
  CHECK(rep.cutoff < cutoffs.back());
  CHECK(rep.error_growth_table.back().error > 2 * rep.inversion_error_sup);
  // same seed, same table
  const auto again = born_sweep(q, 1.0, s, cutoffs, 1e-3, 1);
  CHECK(again.error_growth_table.back().error == rep.error_growth_table.back().error);
}

TEST_CASE("weak potential: exact data close to Born data") {
  const auto q = born_bump(0.01);
  const UniformGrid xg = UniformGrid::covering(0.0, 10.0, 0.5);
  const auto b = born_data(q, xg);
  const auto e = exact_backscatter_data(q, xg);
  for (std::size_t i = 0; i < xg.size(); ++i) CHECK(std::abs(e[i] - b[i]) < 0.02 * std::abs(b[0]));
}

TEST_CASE("optical theorem from unitary partial waves") {
  const auto q = RadialPotential::square_well(1.0, 1.0, 2.0, 0.01);
  const auto ot = optical_theorem(phase_shifts(q, 1.0, 20));
  CHECK(ot.lhs == doctest::Approx(ot.rhs).epsilon(1e-10));
  CHECK(ot.residual < 1e-8);
}

TEST_CASE("born amplitude violates the optical theorem") {
  const auto q = RadialPotential::square_well(1.0, 1.0, 2.0, 0.01);
  const auto ot = born_optical_theorem(q, 1.0);
  CHECK(ot.lhs == 0.0);
  CHECK(ot.rhs > 0.1);
  CHECK(ot.residual == doctest::Approx(1.0));
}
