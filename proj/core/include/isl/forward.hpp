#pragma once

#include <optional>
#include <vector>

#include "isl/grid.hpp"
#include "isl/potential.hpp"

namespace isl {

/// Adaptive ODE tolerances shared by every forward solve.
struct OdeTolerance {
  double rel = 1e-11;
  double abs = 1e-13;
};

/// Jost solution of -f'' + q f = k^2 f with f(x, k) = e^{ikx} for x >= a.
struct JostEvaluation {
  cd k;
  cd f0;       // f(0, k), the Jost function
  cd fprime0;  // f'(0, k)
  /// Integral of f(x, k)^2 over [0, a].
  cd inner_norm;
  /// f(x, k) on the potential grid, when requested.
  std::optional<SampledFunction> profile;
};

JostEvaluation jost_solution(const RadialPotential& q, cd k, bool with_profile = false, OdeTolerance tol = {});

/// Jost function f(k) = f(0, k) only.
cd jost_function(const RadialPotential& q, cd k, OdeTolerance tol = {});

struct BoundState {
  double k;  // kappa_j > 0, energy -kappa_j^2
  double s;  // norming constant
};

/// S(k) on a positive k-grid plus bound states and norming constants.
struct HalfLineScatteringData {
  UniformGrid k_grid;
  std::vector<cd> S;
  std::vector<BoundState> bound_states;  // kappa decreasing
  std::vector<cd> f0_values;             // Jost function on the grid (may be empty for loaded data)

  int J() const noexcept { return static_cast<int>(bound_states.size()); }
  /// max over the grid of ||S(k)| - 1|.
  double unitarity_defect() const noexcept;
  /// S on the symmetric grid [-k_max, k_max] (hermitian extension, S(0) by
  /// extrapolation when the grid starts above 0).
  std::vector<cd> symmetric_samples() const;
};

/// S(k) = f(-k)/f(k) with f(-k) = conj(f(k)). Throws ZeroJost if |f(k)| < 1e-12.
HalfLineScatteringData scattering_matrix(const RadialPotential& q, const UniformGrid& k_grid, OdeTolerance tol = {});

/// Zeros kappa of f(i kappa) on (0, kappa_max], decreasing. The sign scan uses
/// step min(0.01, kappa_max / 100) and bisection to 1e-10.
std::vector<double> bound_states(const RadialPotential& q, double kappa_max, OdeTolerance tol = {});

/// Default scan limit: sqrt(max(-q)) plus a margin.
double default_kappa_max(const RadialPotential& q);

struct NormingConstant {
  double s;             // -2 i k_j / (fdot(i k_j) f'(0, i k_j))
  double s_norm;        // 1 / integral of f(x, i k_j)^2 over [0, inf)
  double relative_gap;  // |s - s_norm| / s
};

/// Norming constant by the derivative formula, cross-checked against the
/// inverse squared norm. Throws CrossCheckFailure if they differ by more than
/// `max_gap` relative.
NormingConstant norming_constant(const RadialPotential& q, double kappa, double max_gap = 1e-4, OdeTolerance tol = {});

/// scattering_matrix plus bound states and norming constants.
HalfLineScatteringData forward_data(const RadialPotential& q, const UniformGrid& k_grid,
                                    std::optional<double> kappa_max = std::nullopt, OdeTolerance tol = {});

/// I(k) = f'(0, k) / f(0, k). Throws ZeroJost.
SampledFunction i_function(const RadialPotential& q, const UniformGrid& k_grid, OdeTolerance tol = {});

/// Reflection coefficient for the full-line problem with q = 0 on x < 0:
/// r(k) = (ik - I(k)) / (ik + I(k)). Throws DivisionSingularity.
SampledFunction reflection_coefficient(const SampledFunction& I);

}  // namespace isl
