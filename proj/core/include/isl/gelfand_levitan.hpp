#pragma once

#include <functional>
#include <vector>

#include "isl/forward.hpp"
#include "isl/fourier.hpp"
#include "isl/kernel.hpp"
#include "isl/marchenko.hpp"
#include "isl/potential.hpp"

namespace isl {

struct SpectralAtom {
  double lambda;  // < 0
  double c;       // > 0
};

/// d rho = w(lambda) d lambda on [0, Lambda_max] plus atoms at negative lambda.
struct SpectralMeasure {
  UniformGrid lambda_grid;
  std::vector<double> w;
  std::vector<SpectralAtom> atoms;

  /// Free density sqrt(lambda) / pi.
  static double w0(double lambda) noexcept;
  double lambda_max() const noexcept { return lambda_grid.back(); }
};

/// Solution of -phi'' + q phi = lambda phi with phi(0) = 0, phi'(0) = 1.
struct RegularSolutionEval {
  double lambda;
  SampledFunction profile;  // on the potential grid
  /// Integral of phi^2 over [0, inf) assuming phi decays as e^{-kappa x}
  /// beyond the support (exact at an eigenvalue); only set for lambda < 0.
  double norm_sq = 0.0;
};

RegularSolutionEval regular_solution(const RadialPotential& q, double lambda, OdeTolerance tol = {});

/// w(lambda) = sqrt(lambda) / (pi |f(sqrt(lambda))|^2) with |f|^2 interpolated
/// from the forward data, atoms at -k_j^2 with c_j = 1 / integral of phi^2.
SpectralMeasure spectral_from_data(const RadialPotential& q, const HalfLineScatteringData& data, double lambda_max,
                                   double lambda_step = 0.25);

/// Runs the forward solve on (0, k_max] with k_max = sqrt(lambda_max) first.
SpectralMeasure spectral_from_potential(const RadialPotential& q, double lambda_max, double lambda_step = 0.25,
                                        double k_step = 0.01);

/// h(k) = pi w(k^2) / k - 1 = 1/|f(k)|^2 - 1 on [0, sqrt(lambda_max)], resampled
/// from the measure with a cubic B-spline in lambda.
SampledFunction measure_deviation_in_k(const SpectralMeasure& measure, double k_step);

/// L(x, y) = integral phi0(x, l) phi0(y, l) d(rho - rho0)(l)
///         = H(x - y) - H(x + y) + sum_j c_j sinh(kx) sinh(ky) / k^2,
/// with H(t) = (1/pi) int_0^inf cos(kt) h(k) dk.
class LKernel {
 public:
  /// H is tabulated on [0, t_max] with step t_step.
  LKernel(const SpectralMeasure& measure, double t_max, double t_step, double k_step = 0.01);

  double operator()(double x, double y) const;
  double H(double t) const;
  const SampledFunction& H_table() const noexcept { return table_; }
  const OscillatoryFourier& transform() const noexcept { return ft_; }
  const std::vector<SpectralAtom>& atoms() const noexcept { return atoms_; }

 private:
  OscillatoryFourier ft_;
  SampledFunction table_;
  std::vector<SpectralAtom> atoms_;
};

/// One-off evaluation of L(x, y).
double build_L(const SpectralMeasure& measure, double x, double y);

/// Row of K(x, y) + int_0^x K(x, s) L(s, y) ds + L(x, y) = 0 on y = j h,
/// j = 0..x/h, by the trapezoidal Nystrom method.
KernelRow solve_gl(const std::function<double(double, double)>& L, double x, double h);

/// q(x) = 2 d/dx K(x, x) by fourth-order differences.
RadialPotential recover_q_gl(const TriangularKernel& kernel);

struct GLResult {
  SampledFunction H;  // on [0, 2 x_max]
  TriangularKernel kernel;
  RadialPotential q;
  double max_condition = 1.0;
  double max_residual = 0.0;
  /// Smallest eigenvalue of the symmetrized I + L on the largest triangle.
  double min_eigenvalue = 1.0;
  double max_asymmetry = 0.0;
  FourierDiagnostics fourier;
};

GLResult invert_gl(const SpectralMeasure& measure, const UniformGrid& x_grid, double k_step = 0.01);

}  // namespace isl
