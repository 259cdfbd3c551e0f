#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isl/errors.hpp"
#include "isl/phase_ambiguity.hpp"
#include "isl/phase_shifts.hpp"

namespace isl::detail {
void riccati_bessel(unsigned l, double z, double& jh, double& nh);
}

using namespace isl;
using std::numbers::pi;

TEST_CASE("riccati-bessel against the standard library") {
  for (unsigned l : {0u, 1u, 5u, 20u, 40u}) {
    for (double z : {0.05, 0.9, 3.0, 15.0, 45.0}) {
      double jh, nh;
      detail::riccati_bessel(l, z, jh, nh);
      const double je = z * std::sph_bessel(l, z), ne = z * std::sph_neumann(l, z);
      CHECK(jh == doctest::Approx(je).epsilon(1e-11));
      if (std::isfinite(ne) && std::abs(ne) < 1e250) CHECK(nh == doctest::Approx(ne).epsilon(1e-11));
    }
  }
}

TEST_CASE("s-wave shift of a barrier") {
  // delta_0 = -ka + atan(k tan(kappa a) / kappa), kappa^2 = k^2 - q0, reduced mod pi
  const auto q = RadialPotential::square_well(1.0, 1.0, 2.0, 0.01);
  const double kap = std::sqrt(3.0);
  double exact = -2.0 + std::atan(2.0 * std::tan(kap) / kap);
  exact -= pi * std::round(exact / pi);
  const auto ps = phase_shifts(q, 2.0, 3);
  CHECK(ps.delta[0] == doctest::Approx(exact).epsilon(1e-9));
  CHECK(ps.delta[0] == doctest::Approx(-0.289250984).epsilon(1e-8));
}

TEST_CASE("weak potential: shifts approach the born integral") {
  // delta_l ~ -(1/k) int q(r) jhat_l(kr)^2 dr
  const double q0 = 1e-4, k = 1.5;
  const auto q = RadialPotential::square_well(q0, 1.0, 2.0, 0.01);
  const auto ps = phase_shifts(q, k, 6);
  for (int l = 0; l <= 6; ++l) {
    double born = 0.0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
      const double r = (i + 0.5) / n;
      const double j = k * r * std::sph_bessel(l, k * r);
      born += j * j / n;
    }
    born *= -q0 / k;
    CHECK(ps.delta[l] == doctest::Approx(born).epsilon(1e-3));
  }
}

TEST_CASE("radius estimates approach the support from below") {
  const auto q = RadialPotential::square_well(1.0, 1.0, 2.0, 0.01);
  const auto ps = phase_shifts(q, 1.0, 30);
  for (int l = 2; l <= 30; ++l) {
    CHECK(ps.support_radius_estimates[l] > ps.support_radius_estimates[l - 1]);
    CHECK(ps.support_radius_estimates[l] < 1.0);
  }
  CHECK(ps.extrapolated_radius() == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(ps.amplitudes[3] - 4 * pi * std::polar(1.0, ps.delta[3]) * std::sin(ps.delta[3])) < 1e-15);
}

TEST_CASE("gaps") {
  const PiecewiseConstant a{{1.0}, {1.0}};
  const PiecewiseConstant b{{0.5, 1.0}, {1.6, 0.7}};
  CHECK(potential_gap(a, b) == doctest::Approx(0.6));
  CHECK(potential_gap(a, a) == 0.0);
  const auto pa = phase_shifts(potential_from_pieces(a), 1.0, 10);
  CHECK(phase_gap(pa, pa) == 0.0);
  auto shifted = pa;
  for (auto& d : shifted.delta) d += pi;  // same S_l
  CHECK(phase_gap(pa, shifted) < 1e-12);
}

TEST_CASE("search respects the constraint and the budget") {
  const PiecewiseConstant q1{{1.0}, {1.0}};
  AmbiguitySearchOptions opt;
  opt.initial_q2 = q1;
  CHECK_THROWS_AS(search_ambiguous_pair(q1, opt), ValidationError);

  AmbiguitySearchOptions small;
  small.budget = 60;
  small.restarts = 2;
  small.target_phase_gap = 1e-4;
  small.seed = 3;
  const auto r = search_ambiguous_pair(q1, small);
  CHECK(r.budget_exhausted);
  CHECK(r.evaluations <= 60 + small.restarts);
  CHECK(r.pair.potential_gap >= 0.5);
  // gaps are recomputed from scratch
  const auto p1 = phase_shifts(potential_from_pieces(r.pair.q1), 1.0, 15);
  const auto p2 = phase_shifts(potential_from_pieces(r.pair.q2), 1.0, 15);
  CHECK(r.pair.phase_gap == doctest::Approx(phase_gap(p1, p2)).epsilon(1e-12));
  const auto again = search_ambiguous_pair(q1, small);
  CHECK(again.pair.phase_gap == r.pair.phase_gap);
}
