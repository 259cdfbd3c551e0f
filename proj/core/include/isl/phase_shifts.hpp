#pragma once

#include <vector>

#include "isl/grid.hpp"
#include "isl/potential.hpp"

namespace isl {

/// Fixed-energy partial-wave phase shifts of a spherically symmetric potential.
struct PhaseShiftSet {
  double k = 1.0;
  int L = 0;
  /// delta_l reduced to (-pi/2, pi/2].
  std::vector<double> delta;
  /// Multiple of pi removed by the reduction: unreduced = delta + branch * pi.
  std::vector<int> branch;
  /// A_l = 4 pi e^{i delta_l} sin delta_l.
  std::vector<cd> amplitudes;
  /// a_l = (2 / (e k)) l |delta_l|^{1/(2l)} for l >= 1; entry 0 is unused (0).
  std::vector<double> support_radius_estimates;

  /// Limit of a_l estimated by fitting log a_l ~ c0 + c1 ln(l)/l + c2/l over
  /// the upper half of the computed range (diagnostic; returns exp(c0)).
  double extrapolated_radius() const;
};

/// Phase shifts for l = 0..L at wavenumber k by the variable-phase equation
///   delta_l'(r) = -(1/k) q(r) (jhat_l(kr) cos delta_l - nhat_l(kr) sin delta_l)^2
/// with Riccati-Bessel jhat_l(z) = z j_l(z) and nhat_l(z) = z y_l(z),
/// integrated outward across the support. Throws MatchingSingularity when the
/// integration breaks down.
PhaseShiftSet phase_shifts(const RadialPotential& q, double k, int L);

/// Phase shift of a single partial wave, unreduced.
double phase_shift(const RadialPotential& q, double k, int l);

}  // namespace isl
