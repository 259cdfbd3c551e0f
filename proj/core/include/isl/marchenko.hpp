#pragma once

#include <string>
#include <vector>

#include "isl/forward.hpp"
#include "isl/fourier.hpp"
#include "isl/kernel.hpp"
#include "isl/potential.hpp"

namespace isl {

/// Diagnostics of the Fourier part of a kernel function.
struct FourierDiagnostics {
  double edge_magnitude = 0.0;    // |g(k_max)|
  double tail_uncertainty = 0.0;  // tail-model uncertainty
  double max_imag = 0.0;          // largest imaginary residue before it was discarded
};

/// F(x) = (1/2pi) int (1 - S(k)) e^{ikx} dk + sum_j s_j e^{-k_j x} on t_grid.
SampledFunction build_F(const HalfLineScatteringData& data, const UniformGrid& t_grid,
                        FourierDiagnostics* diagnostics = nullptr);

/// Continuous part only: F minus the bound-state sum.
SampledFunction build_F_continuous(const HalfLineScatteringData& data, const UniformGrid& t_grid,
                                   FourierDiagnostics* diagnostics = nullptr);

struct KernelRow {
  std::vector<double> values;  // A(x, y) at y = x + j h
  double condition_number = 1.0;
  double residual = 0.0;
};

/// Row of A(x, y) + int_x^{y_max} A(x, s) F(s + y) ds + F(x + y) = 0 for
/// y in [x, y_max], trapezoidal Nystrom on the nodes of F's grid (which must
/// start at 0 and contain x). F is taken as zero beyond its grid.
KernelRow solve_marchenko(const SampledFunction& F, double x, double y_max);

/// q(x) = -2 d/dx A(x, x) by fourth-order differences. The support ends where
/// |q| falls below 1e-6 for good.
RadialPotential recover_q_marchenko(const TriangularKernel& kernel);

struct CharacterizationReport {
  int index = 0;
  int index_expected = 0;
  double symmetry_residual = 0.0;
  double F_sup_norm = 0.0;
  double F_L1_norm = 0.0;
  double xFprime_L1_norm = 0.0;
  bool passed = false;

  // Per-condition detail (not part of the serialized report).
  bool index_ok = false;
  bool bound_states_ok = false;
  bool norms_finite = false;
  std::vector<std::string> failures;
};

/// Checks the admissibility conditions on scattering data: the index of S
/// (winding over [-k_max, k_max]) equals -2J, or -2J-1 when S(0) = -1;
/// S(-k) = conj S(k) = 1/S(k); k_j > 0, s_j > 0; finite norms of F, F and xF'
/// on t_grid.
CharacterizationReport characterize(const HalfLineScatteringData& data, const UniformGrid& t_grid);

/// Sup-norm residual over y >= 0 of F(y) + A(y) + int A(t) F(t + y) dt - A(-y)
/// with A extended by zero to negative arguments. The integral uses Simpson's
/// rule, independently of the trapezoid rule used by the solver.
double check_A0_identity(const SampledFunction& A0, const SampledFunction& F);

struct MarchenkoResult {
  SampledFunction F;
  double t_cut;                 // F treated as zero beyond here
  double truncation_threshold;  // |F| level defining t_cut
  TriangularKernel kernel;
  RadialPotential q;
  double max_condition = 1.0;
  double max_residual = 0.0;
  double A0_residual = 0.0;
  FourierDiagnostics fourier;
};

/// Full pipeline on x_grid (start 0): F, per-x row solves, q = -2 dA(x,x)/dx.
///
/// Truncation: F is computed on [0, 2 x_max]; t_cut is the last point where
/// |F| exceeds max(1e-8, 5 * its level on the last quarter of that range), and
/// F is set to zero beyond. Rows span y in [x, t_cut - x].
MarchenkoResult invert_marchenko(const HalfLineScatteringData& data, const UniformGrid& x_grid);

}  // namespace isl
