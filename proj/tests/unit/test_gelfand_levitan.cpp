#include <doctest.h>

#include <cmath>

#include "isl/forward.hpp"
#include "isl/gelfand_levitan.hpp"

using namespace isl;

namespace {

UniformGrid kgrid(double k_max, double step) {
  return UniformGrid(step, step, static_cast<std::size_t>(std::llround(k_max / step)));
}

double sup_error(const RadialPotential& r, const RadialPotential& q, double lim) {
  double e = 0.0;
  for (std::size_t i = 0; i < r.grid().size() && r.grid()[i] <= lim + 1e-12; ++i) {
    e = std::max(e, std::abs(r.samples()[i] - q.value(r.grid()[i])));
  }
  return e;
}

}  // namespace

TEST_CASE("regular solution of the free problem") {
  const auto q = RadialPotential::zero(2.0, 0.01);
  for (double lambda : {4.0, -1.0}) {
    const auto r = regular_solution(q, lambda);
    const double k = std::sqrt(std::abs(lambda));
    for (std::size_t i = 0; i < r.profile.size(); i += 37) {
      const double x = r.profile.grid()[i];
      const double exact = lambda > 0 ? std::sin(k * x) / k : std::sinh(k * x) / k;
      CHECK(r.profile[i].real() == doctest::Approx(exact).epsilon(1e-9));
    }
  }
}

TEST_CASE("free measure has vanishing deviation") {
  const auto m = spectral_from_potential(RadialPotential::zero(2.0, 0.01), 400.0);
  CHECK(m.atoms.empty());
  for (std::size_t i = 0; i < m.w.size(); ++i) {
    CHECK(m.w[i] == doctest::Approx(SpectralMeasure::w0(m.lambda_grid[i])).epsilon(1e-10));
  }
}

TEST_CASE("atom weight equals the inverse regular-solution norm") {
  const auto q = RadialPotential::square_well(-4.0, 1.0, 2.0, 0.01);
  const auto m = spectral_from_potential(q, 3600.0);
  REQUIRE(m.atoms.size() == 1);
  const double kap = 0.638045048285237717;
  CHECK(m.atoms[0].lambda == doctest::Approx(-kap * kap).epsilon(1e-9));
  // phi = sin(w x)/w inside with w^2 = 4 - kap^2, matched to C e^{-kap x} outside
  const double w = std::sqrt(4.0 - kap * kap);
  const double inside = (0.5 - std::sin(2 * w) / (4 * w)) / (w * w);
  const double edge = std::sin(w) / w;
  const double norm = inside + edge * edge / (2 * kap);
  CHECK(m.atoms[0].c == doctest::Approx(1.0 / norm).epsilon(1e-6));
}

TEST_CASE("L kernel symmetry and the zero measure") {
  const auto q = RadialPotential::square_well(1.0, 1.0, 2.0, 0.01);
  const auto m = spectral_from_potential(q, 3600.0);
  const LKernel L(m, 4.0, 0.01);
  CHECK(L(0.3, 0.7) == doctest::Approx(L(0.7, 0.3)).epsilon(1e-12));
  CHECK(std::abs(L(0.0, 0.5)) < 1e-12);  // phi0(0) = 0
}

TEST_CASE("round trip for barrier and well") {
  for (double q0 : {1.0, -4.0}) {
    const auto q = RadialPotential::square_well(q0, 1.0, 2.0, 0.01);
    const auto d = forward_data(q, kgrid(60.0, 0.01));
    const auto m = spectral_from_data(q, d, 3600.0);
    const auto r = invert_gl(m, UniformGrid::covering(0.0, 2.0, 0.01));
    CHECK(sup_error(r.q, q, 0.9) < 5e-2);
    CHECK(r.min_eigenvalue > 0.0);
  }
}
