#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isl/calculus.hpp"
#include "isl/errors.hpp"
#include "isl/fourier.hpp"
#include "isl/integral_equation.hpp"
#include "isl/roots.hpp"

using namespace isl;
using std::numbers::pi;

TEST_CASE("covering grid divides the interval exactly") {
  const auto g = UniformGrid::covering(0.0, 1.0, 0.3);
  CHECK(g.size() == 5);
  CHECK(g.back() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.step() == doctest::Approx(0.25));
  CHECK(g.nearest(0.6) == 2);
}

TEST_CASE("derivative4 is exact on quartics, one-sided ends included") {
  const double h = 0.1;
  std::vector<double> v;
  for (int i = 0; i <= 20; ++i) {
    const double x = i * h;
    v.push_back(x * x * x * x - 2 * x * x + 3);
  }
  const auto d = derivative4(v, h);
  for (int i = 0; i <= 20; ++i) {
    const double x = i * h;
    CHECK(d[i] == doctest::Approx(4 * x * x * x - 4 * x).epsilon(1e-10));
  }
}

TEST_CASE("trapezoid and simpson against closed forms") {
  const auto g = UniformGrid::covering(0.0, pi, 0.01);
  std::vector<double> s;
  for (std::size_t i = 0; i < g.size(); ++i) s.push_back(std::sin(g[i]));
  CHECK(simpson(s, g.step()) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(trapezoid(s, g.step()) == doctest::Approx(2.0).epsilon(1e-4));
  // even sample count takes the 3/8 tail
  s.pop_back();
  const double exact = 1.0 - std::cos(g[g.size() - 2]);
  CHECK(simpson(s, g.step()) == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("oscillatory fourier of a lorentzian") {
  // (1/2pi) int e^{ikx} / (1 + k^2) dk = e^{-|x|} / 2
  const UniformGrid kg(0.0, 0.01, 6001);
  std::vector<double> g;
  for (std::size_t i = 0; i < kg.size(); ++i) g.push_back(1.0 / (1.0 + kg[i] * kg[i]));
  const OscillatoryFourier ft(SampledFunction::from_real(kg, g), Symmetry::EvenReal);
  for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    CHECK(ft(x).real() == doctest::Approx(0.5 * std::exp(-x)).epsilon(1e-6));
    CHECK(std::abs(ft(x).imag()) < 1e-12);
  }
  CHECK(ft.tail_model().c2.real() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("oscillatory fourier refuses a slowly decaying tail") {
  const UniformGrid kg(0.0, 0.01, 2001);
  std::vector<double> g;
  for (std::size_t i = 0; i < kg.size(); ++i) g.push_back(std::cos(3.0 * kg[i]));
  CHECK_THROWS_AS(OscillatoryFourier(SampledFunction::from_real(kg, g), Symmetry::EvenReal), TailTooLarge);
}

TEST_CASE("nystrom solve with a constant kernel") {
  // g + lambda int_0^1 g = 1  =>  g = 1 / (1 + lambda)
  const double lambda = 0.7;
  const auto grid = UniformGrid::covering(0.0, 1.0, 0.01);
  const auto rhs = SampledFunction::from_real(grid, std::vector<double>(grid.size(), 1.0));
  const auto sol = solve_second_kind([&](double, double) { return cd(lambda); }, rhs, grid);
  for (std::size_t i = 0; i < grid.size(); i += 10) CHECK(sol.solution[i].real() == doctest::Approx(1.0 / 1.7));
  CHECK(sol.residual < 1e-12);
}

TEST_CASE("nystrom solve with a separable kernel") {
  // g(t) + int_0^1 t s g(s) ds = t  =>  g = t / (1 + 1/3), exact under the trapezoid rule only to O(h^2)
  const auto grid = UniformGrid::covering(0.0, 1.0, 0.001);
  std::vector<double> t(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) t[i] = grid[i];
  const auto sol = solve_second_kind([](double a, double b) { return cd(a * b); },
                                     SampledFunction::from_real(grid, t), grid);
  CHECK(sol.solution[grid.size() - 1].real() == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("singular system is refused") {
  const std::vector<double> w{1.0, 1.0};
  const std::vector<double> rhs{1.0, 1.0};
  // I + K with K = -I... rows become zero
  CHECK_THROWS_AS(solve_second_kind_real([](std::size_t i, std::size_t j) { return i == j ? -1.0 : 0.0; }, w, rhs),
                  SingularSystem);
}

TEST_CASE("winding number of circles") {
  std::vector<cd> s;
  for (int i = 0; i < 64; ++i) s.push_back(std::polar(1.0, 2 * pi * i / 64));
  CHECK(winding_number(s) == 1);
  const std::vector<cd> coarse{1.0, -1.0};  // a half-turn step has no direction
  CHECK_THROWS_AS(winding_number(coarse), UnderResolvedContour);
  const std::vector<cd> through_zero{1.0, 0.0, cd(0, 1)};
  CHECK_THROWS_AS(winding_number(through_zero), UnderResolvedContour);
  std::vector<cd> t;
  for (int i = 0; i < 256; ++i) t.push_back(std::pow(std::polar(1.0, -2 * pi * i / 256), 3));
  CHECK(winding_number(t) == -3);
}

TEST_CASE("zeros of a polynomial in a box") {
  const std::vector<cd> roots{{1.0, -0.5}, {1.2, -0.7}, {-0.3, 0.2}, {3.0, 0.0}};
  auto p = [&](cd z) {
    cd v = 1.0;
    for (cd r : roots) v *= z - r;
    return v;
  };
  const auto res = find_zeros_in_box(p, ComplexBox{0.0, 2.0, -1.0, 0.0 - 0.1}, 1e-12);
  REQUIRE(res.zeros.size() == 2);
  CHECK(res.argument_count == 2);
  CHECK(std::abs(res.zeros[0] - roots[0]) < 1e-10);
  CHECK(std::abs(res.zeros[1] - roots[1]) < 1e-10);
}

TEST_CASE("parallel_for visits each index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}
