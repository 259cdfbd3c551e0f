#include "isl/forward.hpp"

#include <algorithm>
#include <array>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <string>

#include "detail/ode.hpp"
#include "isl/errors.hpp"

namespace isl {
namespace {

using JostState = std::array<cd, 3>;  // f, f', -integral of f^2 from a

constexpr cd kI{0.0, 1.0};

}  // namespace

JostEvaluation jost_solution(const RadialPotential& q, cd k, bool with_profile, OdeTolerance tol) {
  if (k == cd{}) throw ValidationError("jost_solution: k must be nonzero");
  JostEvaluation out{k, 1.0, kI * k, 0.0, std::nullopt};
  const auto& grid = q.grid();
  if (q.is_zero()) {
    if (with_profile) {
      std::vector<cd> v(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) v[i] = std::exp(kI * k * grid[i]);
      out.profile = SampledFunction(grid, std::move(v));
    }
    return out;
  }

  const double a = q.support_radius();
  const cd ea = std::exp(kI * k * a);
  JostState y{ea, kI * k * ea, 0.0};
  const double abs_tol = tol.abs * std::max(1.0, std::abs(ea));
  const cd k2 = k * k;

  std::vector<cd> prof;
  if (with_profile) {
    prof.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] >= a) prof[i] = std::exp(kI * k * grid[i]);
    }
  }
  auto record = [&](double x) {
    if (!with_profile || !grid.is_node(x, 1e-9)) return;
    const std::size_t i = grid.nearest(x);
    if (grid[i] <= a) prof[i] = y[0];
  };

  const auto nodes = detail::integration_nodes(q, with_profile);
  std::size_t hint = q.segments().size();
  record(nodes.back());
  for (std::size_t m = nodes.size() - 1; m > 0; --m) {
    const double x1 = nodes[m], x0 = nodes[m - 1];
    const PotentialSegment* seg = detail::segment_for(q, x0, x1, hint);
    auto sys = [&](const JostState& s, JostState& d, double x) {
      const double qx = seg ? seg->at(x) : 0.0;
      d[0] = s[1];
      d[1] = (qx - k2) * s[0];
      d[2] = -s[0] * s[0];
    };
    detail::integrate(sys, y, x1, x0, abs_tol, tol.rel);
    record(x0);
  }
  out.f0 = y[0];
  out.fprime0 = y[1];
  out.inner_norm = y[2];
  if (with_profile) out.profile = SampledFunction(grid, std::move(prof));
  return out;
}

cd jost_function(const RadialPotential& q, cd k, OdeTolerance tol) { return jost_solution(q, k, false, tol).f0; }

double HalfLineScatteringData::unitarity_defect() const noexcept {
  double m = 0.0;
  for (const auto& s : S) m = std::max(m, std::abs(std::abs(s) - 1.0));
  return m;
}

std::vector<cd> HalfLineScatteringData::symmetric_samples() const {
  std::vector<cd> out;
  out.reserve(2 * S.size());
  for (std::size_t i = S.size(); i-- > 0;) out.push_back(std::conj(S[i]));
  out.insert(out.end(), S.begin(), S.end());
  return out;
}

HalfLineScatteringData scattering_matrix(const RadialPotential& q, const UniformGrid& k_grid, OdeTolerance tol) {
  if (!(k_grid.start() > 0.0)) throw ValidationError("scattering_matrix: k-grid must be strictly positive");
  const std::size_t n = k_grid.size();
  std::vector<cd> f(n), S(n);
  parallel_for(n, [&](std::size_t i) { f[i] = jost_function(q, k_grid[i], tol); });
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(f[i]) < 1e-12) {
      throw ZeroJost("Jost function vanishes at k = " + std::to_string(k_grid[i]) +
                     " (zero-energy resonance too close to k_min?)");
    }
    S[i] = std::conj(f[i]) / f[i];
  }
  HalfLineScatteringData d{k_grid, std::move(S), {}, std::move(f)};
  if (d.unitarity_defect() > 1e-8) throw NumericalError("scattering_matrix: unitarity violated");
  return d;
}

double default_kappa_max(const RadialPotential& q) {
  double m = 0.0;
  for (const auto& s : q.segments()) m = std::max({m, -s.q0, -s.q1});
  return m > 0.0 ? 1.05 * std::sqrt(m) + 0.05 : 0.0;
}

std::vector<double> bound_states(const RadialPotential& q, double kappa_max, OdeTolerance tol) {
  std::vector<double> out;
  if (q.is_zero() || !(kappa_max > 0.0)) return out;
  double qmin = 0.0;
  for (const auto& s : q.segments()) qmin = std::min({qmin, s.q0, s.q1});
  if (qmin >= 0.0) return out;  // a nonnegative potential binds nothing

  auto g = [&](double kappa) { return jost_function(q, cd(0.0, kappa), tol).real(); };
  const double step = std::min(0.01, kappa_max / 100.0);
  std::vector<double> ks{std::min(1e-4, step / 2)};
  for (double k = step; k <= kappa_max * (1.0 + 1e-12); k += step) ks.push_back(k);
  std::vector<double> gs(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) { gs[i] = g(ks[i]); });

  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    if (gs[i] == 0.0) {
      out.push_back(ks[i]);
      continue;
    }
    if (gs[i] * gs[i + 1] < 0.0) {
      auto stop = [](double lo, double hi) { return hi - lo <= 1e-12; };
      const auto [lo, hi] = boost::math::tools::bisect(g, ks[i], ks[i + 1], stop);
      out.push_back(0.5 * (lo + hi));
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

NormingConstant norming_constant(const RadialPotential& q, double kappa, double max_gap, OdeTolerance tol) {
  if (!(kappa > 0.0)) throw ValidationError("norming_constant: kappa must be positive");
  const double h = 1e-5 * std::max(1.0, kappa);
  const double gp = jost_function(q, cd(0.0, kappa + h), tol).real();
  const double gm = jost_function(q, cd(0.0, kappa - h), tol).real();
  const double dg = (gp - gm) / (2 * h);  // d f(i kappa) / d kappa = i fdot(i kappa)
  const JostEvaluation j = jost_solution(q, cd(0.0, kappa), false, tol);
  // -2 i k_j / (fdot f'(0)) with fdot = -i dg.
  const double s = 2 * kappa / (dg * j.fprime0.real());
  const double a = q.support_radius();
  const double norm = j.inner_norm.real() + std::exp(-2 * kappa * a) / (2 * kappa);
  const double s_norm = 1.0 / norm;
  const double gap = std::abs(s - s_norm) / std::abs(s);
  if (!(gap <= max_gap) || !(s > 0.0)) {
    throw CrossCheckFailure("norming constant at kappa = " + std::to_string(kappa) + ": derivative formula gives " +
                            std::to_string(s) + ", inverse norm gives " + std::to_string(s_norm));
  }
  return {s, s_norm, gap};
}

HalfLineScatteringData forward_data(const RadialPotential& q, const UniformGrid& k_grid,
                                    std::optional<double> kappa_max, OdeTolerance tol) {
  HalfLineScatteringData d = scattering_matrix(q, k_grid, tol);
  const auto kappas = bound_states(q, kappa_max.value_or(default_kappa_max(q)), tol);
  for (double kap : kappas) d.bound_states.push_back({kap, norming_constant(q, kap, 1e-4, tol).s});
  return d;
}

SampledFunction i_function(const RadialPotential& q, const UniformGrid& k_grid, OdeTolerance tol) {
  std::vector<cd> v(k_grid.size());
  parallel_for(k_grid.size(), [&](std::size_t i) {
    const JostEvaluation j = jost_solution(q, k_grid[i], false, tol);
    if (std::abs(j.f0) < 1e-12) throw ZeroJost("f(0, k) vanishes at k = " + std::to_string(k_grid[i]));
    v[i] = j.fprime0 / j.f0;
  });
  return SampledFunction(k_grid, std::move(v));
}

SampledFunction reflection_coefficient(const SampledFunction& I) {
  const auto& grid = I.grid();
  std::vector<cd> r(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cd ik = kI * grid[i];
    const cd den = ik + I[i];
    if (std::abs(den) <= 1e-14 * (std::abs(ik) + std::abs(I[i]))) {
      throw DivisionSingularity("ik + I(k) vanishes at k = " + std::to_string(grid[i]));
    }
    r[i] = (ik - I[i]) / den;
  }
  return SampledFunction(grid, std::move(r));
}

}  // namespace isl
