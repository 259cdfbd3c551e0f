#include <doctest.h>

#include <chrono>
#include <cmath>

#include "isl/errors.hpp"
#include "isl/forward.hpp"
#include "isl/roots.hpp"

using namespace isl;

namespace {

// f(k) for q = q0 on [0, a]: matching e^{ikx} at x = a to cos/sin inside.
cd well_jost(cd k, double q0, double a) {
  const cd kap = std::sqrt(k * k - q0);
  return std::exp(cd(0, 1) * k * a) * (std::cos(kap * a) - cd(0, 1) * k * std::sin(kap * a) / kap);
}

UniformGrid kgrid(double k_max, double step) {
  return UniformGrid(step, step, static_cast<std::size_t>(std::llround(k_max / step)));
}

}  // namespace

TEST_CASE("jost function matches the matching formula") {
  for (double q0 : {1.0, -4.0, 10.0}) {
    const auto q = RadialPotential::square_well(q0, 1.0, 2.0, 0.01);
    for (cd k : {cd(0.3), cd(2.5), cd(17.0), cd(2.0, 0.5), cd(2.7, -1.7)}) {
      CHECK(std::abs(jost_function(q, k) - well_jost(k, q0, 1.0)) < 1e-8 * std::max(1.0, std::abs(well_jost(k, q0, 1.0))));
    }
  }
}

TEST_CASE("frozen values of the unit-width wells") {
  // high-precision matching-formula values
  const auto barrier = RadialPotential::square_well(1.0, 1.0, 2.0, 0.01);
  CHECK(std::abs(jost_function(barrier, 2.5) - cd(1.01926520776872065, 0.262040088126353245)) < 1e-9);
  const auto well = RadialPotential::square_well(-4.0, 1.0, 2.0, 0.01);
  CHECK(std::abs(jost_function(well, 1.5) - cd(0.301513120521789391, -0.824537286907902856)) < 1e-9);
}

TEST_CASE("S matrix and the jost values") {
  const auto q = RadialPotential::square_well(1.0, 1.0, 2.0, 0.01);
  const auto d = scattering_matrix(q, kgrid(20.0, 0.01));
  double err = 0.0;
  for (std::size_t i = 0; i < d.S.size(); ++i) {
    const cd f = well_jost(d.k_grid[i], 1.0, 1.0);
    err = std::max(err, std::abs(d.S[i] - std::conj(f) / f));
  }
  CHECK(err < 1e-8);
  CHECK(d.unitarity_defect() < 1e-12);
}

TEST_CASE("bound state and its norming constant") {
  const auto q = RadialPotential::square_well(-4.0, 1.0, 2.0, 0.01);
  const auto kap = bound_states(q, default_kappa_max(q));
  REQUIRE(kap.size() == 1);
  CHECK(kap[0] == doctest::Approx(0.638045048285237717).epsilon(1e-10));
  const auto n = norming_constant(q, kap[0]);
  // 1 / int f(x, i kappa)^2 dx evaluated in closed form
  CHECK(n.s == doctest::Approx(2.50691346776351513).epsilon(1e-8));
  CHECK(n.relative_gap < 1e-4);
}

TEST_CASE("deep well bound states and norming constants") {
  const auto q = RadialPotential::square_well(-25.0, 1.0, 2.0, 0.01);
  const auto d = forward_data(q, kgrid(30.0, 0.01));
  REQUIRE(d.J() == 2);
  CHECK(d.bound_states[0].k > d.bound_states[1].k);
  for (const auto& b : d.bound_states) {
    CHECK(std::abs(well_jost(cd(0, b.k), -25.0, 1.0)) < 1e-8);
    CHECK(norming_constant(q, b.k).relative_gap < 1e-4);
  }
}

TEST_CASE("levinson index and unitarity over several potentials") {
  struct Case {
    RadialPotential q;
    int J;
  };
  const std::vector<Case> cases{
      {RadialPotential::square_well(1.0, 1.0, 2.0, 0.01), 0},
      {RadialPotential::square_well(-1.0, 1.0, 2.0, 0.01), 0},
      {RadialPotential::square_well(-4.0, 1.0, 2.0, 0.01), 1},
      {RadialPotential::square_well(-25.0, 1.0, 2.0, 0.01), 2},
      {RadialPotential::square_well(5.0, 0.5, 2.0, 0.01), 0},
      {RadialPotential::piecewise_constant({{0.5, 1.0}, {2.0, -6.0}}, 2.0, 0.01), 1},
  };
  for (const auto& c : cases) {
    const auto d = forward_data(c.q, kgrid(40.0, 0.01));
    CHECK(d.J() == c.J);
    CHECK(d.unitarity_defect() < 1e-8);
    CHECK(winding_number(d.symmetric_samples()) == -2 * d.J());
  }
}

TEST_CASE("zero potential") {
  const auto q = RadialPotential::zero(2.0, 0.01);
  const auto d = forward_data(q, kgrid(5.0, 0.05));
  CHECK(d.J() == 0);
  for (const cd s : d.S) CHECK(std::abs(s - 1.0) < 1e-14);
  const auto I = i_function(q, kgrid(5.0, 0.05));
  const auto r = reflection_coefficient(I);
  CHECK(r.max_abs() < 1e-12);
}

TEST_CASE("reflection coefficient stays inside the unit disk") {
  const auto q = RadialPotential::square_well(3.0, 1.0, 2.0, 0.01);
  const auto r = reflection_coefficient(i_function(q, kgrid(10.0, 0.05)));
  CHECK(r.max_abs() <= 1.0 + 1e-12);
  CHECK(r.max_abs() > 0.1);
}

TEST_CASE("2000-point k grid in reasonable time") {
  const auto q = RadialPotential::square_well(1.0, 1.0, 2.0, 0.01);
  const auto t0 = std::chrono::steady_clock::now();
  const auto d = forward_data(q, kgrid(20.0, 0.01));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(d.S.size() == 2000);
  CHECK(secs < 5.0);
}
