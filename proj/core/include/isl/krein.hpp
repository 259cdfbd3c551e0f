#pragma once

#include <vector>

#include "isl/forward.hpp"
#include "isl/marchenko.hpp"
#include "isl/potential.hpp"

namespace isl {

/// Jost function on the real axis rebuilt from S alone.
struct KreinJost {
  SampledFunction f;          // on the data's k-grid
  double reconstruction_residual;  // max |f(-k)/f(k) - S(k)| over the grid
  double phase_consistency;        // max |arg of the extrapolated f + delta|
  std::vector<double> phase;       // unwrapped delta(k), S = e^{2 i delta}
};

/// f(k) = exp(-(1/pi) int delta(y) / (y - k) dy) evaluated at k + i eps and
/// k + 2 i eps, with the log extrapolated linearly to eps = 0. The phase is
/// unwrapped from k_max (where S ~ 1) downward; it is integrated as a piecewise
/// quadratic (analytic logarithms near the singularity, Gauss-Legendre away
/// from it) plus a fitted d1/y + d3/y^3 tail beyond k_max, blended into the
/// samples over the last tenth of the grid.
///
/// The modulus comes from the extrapolated integral. The argument is the
/// boundary value -delta(k) itself; the argument of the extrapolated integral
/// is kept only as the `phase_consistency` diagnostic, since the blend alters
/// delta near k_max.
///
/// Throws IndexNonzero for data with bound states or nonzero index, and
/// BranchJump when consecutive samples of S differ in phase by more than pi/2.
KreinJost jost_from_S(const HalfLineScatteringData& data, double epsilon = 1e-4);

struct KreinH {
  SampledFunction H;  // on [0, t_max]; H(-t) = H(t)
  double asymmetry;   // max |H(t) - H(-t)| before symmetrization
  FourierDiagnostics fourier;
};

/// H(t) = (1/2pi) int e^{-ikt} (1/|f(k)|^2 - 1) dk on [0, t_max].
KreinH build_H(const SampledFunction& f, double t_max, double t_step);

struct KreinRow {
  std::vector<double> gamma;  // Gamma_x(t, 0) at t = j h, j = 0..x/h
  double gamma_at_x = 0.0;    // Gamma_x(x, 0)
  double condition_number = 1.0;
  double residual = 0.0;
};

/// Gamma_x(t, 0) + int_0^x H(t - u) Gamma_x(u, 0) du = H(t), 0 <= t <= x,
/// on the nodes of H's grid.
KreinRow solve_krein(const SampledFunction& H, double x);

struct KreinConditions {
  bool symmetry_ok = false;
  bool index_zero = false;
  bool F_norms_ok = false;
};

struct KreinWorkspace {
  KreinJost f_plus;
  KreinH H;
  KreinConditions conditions;
  std::vector<double> a;  // a(x) = 2 Gamma_{2x}(2x, 0) on the x-grid
  RadialPotential q;
  double max_condition = 1.0;
  double max_residual = 0.0;
};

/// q(x) = a(x)^2 + a'(x) with a(x) = 2 Gamma_{2x}(2x, 0); H must cover [0, 2 x_max].
RadialPotential recover_q_krein(const SampledFunction& H, const UniformGrid& x_grid,
                                std::vector<double>* a_out = nullptr, double* max_condition = nullptr,
                                double* max_residual = nullptr);

/// Full pipeline: index gate, f from S, H, per-x solves.
KreinWorkspace invert_krein(const HalfLineScatteringData& data, const UniformGrid& x_grid);

}  // namespace isl
