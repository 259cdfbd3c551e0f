#pragma once

#include <limits>
#include <vector>

#include "isl/forward.hpp"
#include "isl/potential.hpp"
#include "isl/roots.hpp"

namespace isl {

/// Zeros of the Jost function in the lower half plane.
struct ResonanceSet {
  std::vector<cd> zeros;
  std::vector<double> residuals;  // |f(k)| at each zero
  ComplexBox search_box;
  int count_by_argument_principle = 0;
  /// Max over zeros of |f(-conj k)|, or of the distance to the mirrored zero
  /// when the mirror lies in the box.
  double symmetry_error = 0.0;
};

struct ResonanceOptions {
  double tol = 1e-10;   // |f| at an accepted zero
  double max_residual = 1e-8;
  ZeroSearchOptions search{};
};

/// Default depth limit 30 / (2a): beyond it e^{2a|Im k|} swamps the argument
/// principle in double precision.
double resonance_depth_cap(const RadialPotential& q);

/// Throws ValidationError for a box reaching into Im k >= 0 or below the
/// depth cap; BoundaryZero or CountMismatch from the zero search.
ResonanceSet find_resonances(const RadialPotential& q, const ComplexBox& box, const ResonanceOptions& opt = {},
                             OdeTolerance tol = {});

struct FreeRegionCheck {
  bool holds;
  /// min over zeros of c - b ln|k| - Im k; +infinity for an empty set.
  double margin;
};

/// True iff no zero lies in Im k > c - b ln|k|.
FreeRegionCheck resonance_free_region(const ResonanceSet& set, double b, double c);

struct FreeRegionFit {
  double b, c;
  FreeRegionCheck check;  // over the zeros not used in the fit
  /// Smallest c for which the curve with the fitted b clears every zero.
  double c_envelope;
};

/// Fits the curve Im k = c - b ln|k| through the two largest-|k| zeros and
/// checks the rest against it. Needs at least two zeros.
FreeRegionFit fit_free_region(const ResonanceSet& set);

/// Zeros k = -i tau of the real function f(-i tau), tau in (0, depth]: sign
/// scan with step `step`, bisection to 1e-12. Returns tau values, increasing.
std::vector<double> imaginary_axis_census(const RadialPotential& q, double depth, double step = 0.01,
                                          OdeTolerance tol = {});

struct GrowthProfile {
  std::vector<double> depth;    // |Im k| of the sampled horizontal line
  std::vector<double> log_max;  // log max |f| along it
  double fitted_type;           // slope of log_max against depth
};

/// log max |f(k)| along Im k = -depth, Re k in [-re_max, re_max], for the
/// given depths; the slope estimates the exponential type (<= 2a expected).
GrowthProfile exponential_type_profile(const RadialPotential& q, double re_max, const std::vector<double>& depths,
                                       OdeTolerance tol = {});

}  // namespace isl
