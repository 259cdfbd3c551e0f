#pragma once

#include <cstdint>
#include <vector>

#include "isl/grid.hpp"
#include "isl/phase_shifts.hpp"
#include "isl/potential.hpp"

namespace isl {

/// Radial Fourier transform qt(xi) = 4 pi int_0^a q(r) r^2 sinc(xi r) dr,
/// i.e. -4 pi times the Born amplitude at momentum transfer xi.
double born_amplitude(const RadialPotential& q, double xi);

/// qt sampled on a uniform xi-grid starting at 0.
SampledFunction born_data(const RadialPotential& q, const UniformGrid& xi_grid);

/// Exact (all orders) counterpart of born_data from backscattering: the
/// sample at xi is -4 pi Re A(theta = pi) at k = xi / 2, from phase shifts up
/// to l = ceil(k a) + extra_l. The xi = 0 sample uses k = xi_step / 200.
SampledFunction exact_backscatter_data(const RadialPotential& q, const UniformGrid& xi_grid, int extra_l = 15);

/// q(r) = (1 / (2 pi^2)) int_0^cutoff qt(xi) xi^2 sinc(xi r) dxi on r_grid,
/// after adding uniform noise in [-noise, noise] (mt19937_64 seeded with
/// `seed`, one draw per sample in grid order) to every sample. The cutoff is
/// the regularizer; samples beyond it are ignored.
RadialPotential born_invert(const SampledFunction& samples, double cutoff, double noise, std::uint64_t seed,
                            const UniformGrid& r_grid);

struct BornSweepRow {
  double delta, cutoff, error;
};

struct BornExperimentReport {
  double q_scale = 1.0;
  double noise_delta = 0.0;
  double cutoff = 0.0;               // cutoff with the smallest error in the table
  double inversion_error_sup = 0.0;  // relative sup error on [0, 0.9a] at that cutoff
  std::vector<BornSweepRow> error_growth_table;
};

/// Relative sup error max |p - q| / max |q| over [0, 0.9a].
double relative_sup_error(const RadialPotential& p, const RadialPotential& q);

/// Inverts `samples` at every cutoff (all cutoffs must lie within the samples'
/// range) with the same noise realization and tabulates the error against q.
BornExperimentReport born_sweep(const RadialPotential& q, double q_scale, const SampledFunction& samples,
                                const std::vector<double>& cutoffs, double noise, std::uint64_t seed);

/// Smooth bump s (1 - r^2)^2 on [0, 1], used by the Born demonstrations.
RadialPotential born_bump(double scale, double x_max = 1.5, double step = 0.01);

struct OpticalTheorem {
  double lhs;  // 4 pi Im A(beta, beta, k)
  double rhs;  // k int |A(beta, alpha, k)|^2 d alpha
  double residual;
};

/// Both sides of the optical theorem from the partial-wave amplitude
/// A(theta) = sum (2l+1) / (4 pi k) A_l P_l(cos theta). The angular integral
/// uses Gauss-Legendre nodes, exact for the degree-2L integrand. The residual
/// is |lhs - rhs| / max(|lhs|, |rhs|), 0 when both vanish. A radial potential
/// gives the same A(beta, beta) for every direction beta, so one suffices.
OpticalTheorem optical_theorem(const PhaseShiftSet& ps);
double optical_theorem_residual(const PhaseShiftSet& ps);

/// The same two sides for the real Born amplitude A = -qt(xi) / (4 pi):
/// lhs is 0 while rhs > 0 for q != 0.
OpticalTheorem born_optical_theorem(const RadialPotential& q, double k, int nodes = 96);

}  // namespace isl
