#include "isl/born.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <gsl/gsl_integration.h>
#include <memory>
#include <numbers>
#include <random>

#include "isl/errors.hpp"

namespace isl {
namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double z) {
  if (std::abs(z) < 1e-4) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(std::size_t n) : x(n), w(n) {
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> t(
        gsl_integration_glfixed_table_alloc(n), &gsl_integration_glfixed_table_free);
    for (std::size_t i = 0; i < n; ++i) gsl_integration_glfixed_point(-1.0, 1.0, i, &x[i], &w[i], t.get());
  }
};

// sum_l (2l + 1) c_l P_l(mu) / (4 pi k)
cd partial_wave_sum(const std::vector<cd>& A, double k, double mu) {
  cd s = 0.0;
  for (std::size_t l = 0; l < A.size(); ++l) {
    s += static_cast<double>(2 * l + 1) * A[l] * boost::math::legendre_p(static_cast<int>(l), mu);
  }
  return s / (4.0 * kPi * k);
}

}  // namespace

double born_amplitude(const RadialPotential& q, double xi) {
  if (xi < 0.0) throw ValidationError("born_amplitude: xi must be >= 0");
  double total = 0.0;
  for (const auto& s : q.segments()) {
    if (s.q0 == 0.0 && s.q1 == 0.0) continue;
    // Sub-panels short enough to resolve the oscillation of sinc(xi r).
    const double len = s.x1 - s.x0;
    const auto m = static_cast<int>(std::ceil(len * std::max(xi, 1.0) / 2.0));
    for (int p = 0; p < m; ++p) {
      const double r0 = s.x0 + len * p / m, r1 = s.x0 + len * (p + 1) / m;
      total += boost::math::quadrature::gauss<double, 10>::integrate(
          [&](double r) { return s.at(r) * r * r * sinc(xi * r); }, r0, r1);
    }
  }
  return 4.0 * kPi * total;
}

SampledFunction born_data(const RadialPotential& q, const UniformGrid& xi_grid) {
  std::vector<cd> v(xi_grid.size());
  parallel_for(v.size(), [&](std::size_t i) { v[i] = born_amplitude(q, xi_grid[i]); });
  return SampledFunction(xi_grid, std::move(v));
}

SampledFunction exact_backscatter_data(const RadialPotential& q, const UniformGrid& xi_grid, int extra_l) {
  if (std::abs(xi_grid.start()) > 1e-12) throw ValidationError("exact_backscatter_data: xi grid must start at 0");
  if (extra_l < 0) throw ValidationError("exact_backscatter_data: extra_l must be >= 0");
  std::vector<cd> v(xi_grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double k = std::max(xi_grid[i], xi_grid.step() / 100.0) / 2.0;
    const int L = static_cast<int>(std::ceil(k * q.support_radius())) + extra_l;
    const PhaseShiftSet ps = phase_shifts(q, k, L);
    v[i] = -4.0 * kPi * partial_wave_sum(ps.amplitudes, k, -1.0).real();
  }
  return SampledFunction(xi_grid, std::move(v));
}

RadialPotential born_invert(const SampledFunction& samples, double cutoff, double noise, std::uint64_t seed,
                            const UniformGrid& r_grid) {
  const auto& g = samples.grid();
  if (std::abs(g.start()) > 1e-12) throw ValidationError("born_invert: xi grid must start at 0");
  if (!(cutoff > 0.0) || cutoff > g.back() * (1.0 + 1e-12)) {
    throw ValidationError("born_invert: cutoff must lie in (0, xi_max]");
  }
  if (noise < 0.0) throw ValidationError("born_invert: noise must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-noise, noise);
  std::vector<double> data(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) data[i] = samples[i].real() + (noise > 0.0 ? u(rng) : 0.0);

  const std::size_t n = std::min(g.size(), g.nearest(cutoff) + 1);
  // Trapezoid on the retained samples; the integrand is smooth in xi.
  std::vector<double> out(r_grid.size());
  parallel_for(out.size(), [&](std::size_t j) {
    const double r = r_grid[j];
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
      s += w * data[i] * g[i] * g[i] * sinc(g[i] * r);
    }
    out[j] = s * g.step() / (2.0 * kPi * kPi);
  });
  return RadialPotential::from_reconstruction(r_grid, std::move(out), 0.0, "born");
}

double relative_sup_error(const RadialPotential& p, const RadialPotential& q) {
  const double a = q.support_radius();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < q.grid().size(); ++i) {
    const double x = q.grid()[i];
    if (x > 0.9 * a + 1e-12) break;
    num = std::max(num, std::abs(p.value(x) - q.samples()[i]));
    den = std::max(den, std::abs(q.samples()[i]));
  }
  return den > 0.0 ? num / den : num;
}

BornExperimentReport born_sweep(const RadialPotential& q, double q_scale, const SampledFunction& samples,
                                const std::vector<double>& cutoffs, double noise, std::uint64_t seed) {
  if (cutoffs.empty()) throw ValidationError("born_sweep: no cutoffs");
  BornExperimentReport rep;
  rep.q_scale = q_scale;
  rep.noise_delta = noise;
  rep.error_growth_table.resize(cutoffs.size());
  parallel_for(cutoffs.size(), [&](std::size_t i) {
    const RadialPotential p = born_invert(samples, cutoffs[i], noise, seed, q.grid());
    rep.error_growth_table[i] = {noise, cutoffs[i], relative_sup_error(p, q)};
  });
  const auto best = std::min_element(rep.error_growth_table.begin(), rep.error_growth_table.end(),
                                     [](const BornSweepRow& a, const BornSweepRow& b) { return a.error < b.error; });
  rep.cutoff = best->cutoff;
  rep.inversion_error_sup = best->error;
  return rep;
}

RadialPotential born_bump(double scale, double x_max, double step) {
  return RadialPotential::from_function(
      [scale](double r) {
        const double u = 1.0 - r * r;
        return scale * u * u;
      },
      1.0, x_max, step, "bump");
}

OpticalTheorem optical_theorem(const PhaseShiftSet& ps) {
  const std::vector<cd>& A = ps.amplitudes;
  const double k = ps.k;
  const double lhs = 4.0 * kPi * partial_wave_sum(A, k, 1.0).imag();
  const GaussLegendre gl(A.size() + 2);
  double integral = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) integral += gl.w[i] * std::norm(partial_wave_sum(A, k, gl.x[i]));
  const double rhs = k * 2.0 * kPi * integral;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return {lhs, rhs, scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0};
}

double optical_theorem_residual(const PhaseShiftSet& ps) { return optical_theorem(ps).residual; }

OpticalTheorem born_optical_theorem(const RadialPotential& q, double k, int nodes) {
  if (!(k > 0.0) || nodes < 2) throw ValidationError("born_optical_theorem: need k > 0 and two or more nodes");
  const GaussLegendre gl(static_cast<std::size_t>(nodes));
  // Forward amplitude is -qt(0) / (4 pi), real.
  const double lhs = 0.0;
  double integral = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    const double xi = k * std::sqrt(std::max(0.0, 2.0 * (1.0 - gl.x[i])));
    const double a = -born_amplitude(q, xi) / (4.0 * kPi);
    integral += gl.w[i] * a * a;
  }
  const double rhs = k * 2.0 * kPi * integral;
  return {lhs, rhs, rhs > 0.0 ? 1.0 : 0.0};
}

}  // namespace isl
