#include "isl/marchenko.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isl/calculus.hpp"
#include "isl/errors.hpp"
#include "isl/integral_equation.hpp"
#include "isl/roots.hpp"

namespace isl {
namespace {

std::size_t node_index(const UniformGrid& g, double x, const char* what) {
  if (!g.is_node(x, 1e-6)) throw ValidationError(std::string(what) + ": point is not a grid node");
  return g.nearest(x);
}

}  // namespace

SampledFunction build_F_continuous(const HalfLineScatteringData& data, const UniformGrid& t_grid,
                                   FourierDiagnostics* diagnostics) {
  std::vector<cd> g(data.S.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 1.0 - data.S[i];
  const OscillatoryFourier ft(SampledFunction(data.k_grid, std::move(g)), Symmetry::Hermitian);
  std::vector<cd> v(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) { v[i] = ft(t_grid[i]); });
  double max_imag = 0.0;
  for (auto& z : v) {
    max_imag = std::max(max_imag, std::abs(z.imag()));
    z = z.real();
  }
  if (diagnostics) *diagnostics = {ft.edge_magnitude(), ft.tail_uncertainty(), max_imag};
  return SampledFunction(t_grid, std::move(v));
}

SampledFunction build_F(const HalfLineScatteringData& data, const UniformGrid& t_grid,
                        FourierDiagnostics* diagnostics) {
  const SampledFunction fc = build_F_continuous(data, t_grid, diagnostics);
  std::vector<cd> v(fc.values().begin(), fc.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (const auto& b : data.bound_states) v[i] += b.s * std::exp(-b.k * t_grid[i]);
  }
  return SampledFunction(t_grid, std::move(v));
}

KernelRow solve_marchenko(const SampledFunction& F, double x, double y_max) {
  const UniformGrid& g = F.grid();
  if (std::abs(g.start()) > 1e-12) throw ValidationError("solve_marchenko: F grid must start at 0");
  const std::size_t ix = node_index(g, x, "solve_marchenko");
  const double h = g.step();
  const auto iy = static_cast<std::ptrdiff_t>(std::floor(y_max / h + 1e-9));
  if (iy < static_cast<std::ptrdiff_t>(ix)) return {};
  const std::size_t n = static_cast<std::size_t>(iy) - ix + 1;
  auto Fv = [&](std::size_t idx) { return idx < F.size() ? F[idx].real() : 0.0; };
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = -Fv(2 * ix + i);
  const auto w = trapezoid_weights(n, h);
  const auto sol = solve_second_kind_real([&](std::size_t i, std::size_t j) { return Fv(2 * ix + i + j); }, w, rhs);
  return {sol.solution, sol.condition_number, sol.residual};
}

RadialPotential recover_q_marchenko(const TriangularKernel& kernel) {
  const auto diag = kernel.diagonal();
  if (diag.size() < 5) throw ValidationError("recover_q_marchenko: need at least five diagonal nodes");
  auto d = derivative4(diag, kernel.x_grid().step());
  for (double& v : d) v *= -2.0;
  return RadialPotential::from_reconstruction(kernel.x_grid(), std::move(d), 1e-6, "marchenko");
}

double check_A0_identity(const SampledFunction& A0, const SampledFunction& F) {
  const double h = A0.grid().step();
  if (std::abs(F.grid().step() - h) > 1e-12 * h || std::abs(F.grid().start()) > 1e-12 ||
      std::abs(A0.grid().start()) > 1e-12) {
    throw ValidationError("check_A0_identity: A0 and F must share a grid step and start at 0");
  }
  const std::size_t m = A0.size();
  auto Fv = [&](std::size_t idx) { return idx < F.size() ? F[idx].real() : 0.0; };
  double worst = 0.0;
  std::vector<double> integrand(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t t = 0; t < m; ++t) integrand[t] = A0[t].real() * Fv(t + j);
    const double r = Fv(j) + A0[j].real() + simpson(integrand, h);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

CharacterizationReport characterize(const HalfLineScatteringData& data, const UniformGrid& t_grid) {
  CharacterizationReport rep;
  const int J = data.J();
  rep.index_expected = -2 * J - (data.S.front().real() < 0.0 ? 1 : 0);
  try {
    rep.index = winding_number(data.symmetric_samples());
    rep.index_ok = rep.index == rep.index_expected;
    if (!rep.index_ok) {
      rep.failures.push_back("index of S is " + std::to_string(rep.index) + ", expected " +
                             std::to_string(rep.index_expected));
    }
  } catch (const UnderResolvedContour& e) {
    rep.failures.push_back(std::string("index of S undetermined: ") + e.what());
  }

  double sym = 0.0;
  for (const auto& s : data.S) sym = std::max(sym, std::abs(s * std::conj(s) - 1.0));
  rep.symmetry_residual = sym;
  if (!(sym <= 1e-6)) rep.failures.push_back("S(k) conj(S(k)) differs from 1 by " + std::to_string(sym));
  const bool decays = std::abs(1.0 - data.S.back()) <= 0.25;
  if (!decays) rep.failures.push_back("S(k) does not approach 1 at k_max");

  rep.bound_states_ok = true;
  for (std::size_t j = 0; j < data.bound_states.size(); ++j) {
    const auto& b = data.bound_states[j];
    if (!(b.k > 0.0) || !(b.s > 0.0) || (j > 0 && !(b.k < data.bound_states[j - 1].k))) {
      rep.bound_states_ok = false;
      rep.failures.push_back("bound state " + std::to_string(j) + " has k = " + std::to_string(b.k) +
                             ", s = " + std::to_string(b.s) + " (need k_j > 0 decreasing, s_j > 0)");
    }
  }

  try {
    const SampledFunction F = build_F(data, t_grid);
    const auto f = F.real_part();
    const double h = t_grid.step();
    std::vector<double> absf(f.size()), xfp(f.size());
    const auto fp = derivative4(f, h);
    for (std::size_t i = 0; i < f.size(); ++i) {
      absf[i] = std::abs(f[i]);
      xfp[i] = t_grid[i] * std::abs(fp[i]);
    }
    rep.F_sup_norm = *std::max_element(absf.begin(), absf.end());
    rep.F_L1_norm = trapezoid(absf, h);
    rep.xFprime_L1_norm = trapezoid(xfp, h);
    rep.norms_finite = std::isfinite(rep.F_sup_norm) && std::isfinite(rep.F_L1_norm) &&
                       std::isfinite(rep.xFprime_L1_norm);
    if (!rep.norms_finite) rep.failures.push_back("norms of F are not finite");
  } catch (const NumericalError& e) {
    rep.failures.push_back(std::string("F could not be computed: ") + e.what());
  }
  rep.passed = rep.index_ok && sym <= 1e-6 && decays && rep.bound_states_ok && rep.norms_finite;
  return rep;
}

MarchenkoResult invert_marchenko(const HalfLineScatteringData& data, const UniformGrid& x_grid) {
  if (std::abs(x_grid.start()) > 1e-12) throw ValidationError("invert_marchenko: x grid must start at 0");
  const double h = x_grid.step();
  const std::size_t nt = 2 * (x_grid.size() - 1) + 1;
  const UniformGrid t_grid(0.0, h, nt);
  FourierDiagnostics diag;
  const SampledFunction full = build_F(data, t_grid, &diag);

  // For a compactly supported potential the complete F (reflection part plus
  // bound-state sum) vanishes beyond twice the support radius.
  double tail_level = 0.0;
  for (std::size_t i = (3 * (nt - 1)) / 4; i < nt; ++i) tail_level = std::max(tail_level, std::abs(full[i]));
  const double threshold = std::max(1e-8, 5.0 * tail_level);
  std::size_t icut = 0;
  for (std::size_t i = nt; i-- > 0;) {
    if (std::abs(full[i]) > threshold) {
      icut = i;
      break;
    }
  }
  const double t_cut = t_grid[icut];

  // Kernel values are needed up to 2 t_cut; F is zero beyond t_cut.
  const std::size_t nf = std::max(nt, 2 * icut + 1);
  std::vector<cd> fv(nf, 0.0);
  for (std::size_t i = 0; i <= icut; ++i) fv[i] = full[i];
  SampledFunction F(UniformGrid(0.0, h, nf), std::move(fv));

  TriangularKernel kernel(x_grid, TriangularKernel::Orientation::Upper);
  std::vector<double> conds(x_grid.size(), 1.0), resid(x_grid.size(), 0.0);
  parallel_for(x_grid.size(), [&](std::size_t i) {
    KernelRow row = solve_marchenko(F, x_grid[i], t_cut - x_grid[i]);
    conds[i] = row.condition_number;
    resid[i] = row.residual;
    kernel.set_row(i, std::move(row.values));
  });

  RadialPotential q = recover_q_marchenko(kernel);
  const auto& r0 = kernel.row(0);
  double a0_res = 0.0;
  if (r0.size() >= 2) {
    const SampledFunction a0 = SampledFunction::from_real(UniformGrid(0.0, h, r0.size()), r0);
    a0_res = check_A0_identity(a0, F);
  }
  return {std::move(F),
          t_cut,
          threshold,
          std::move(kernel),
          std::move(q),
          *std::max_element(conds.begin(), conds.end()),
          *std::max_element(resid.begin(), resid.end()),
          a0_res,
          diag};
}

}  // namespace isl
