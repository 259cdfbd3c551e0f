#pragma once

#include <functional>
#include <span>
#include <vector>

#include "isl/grid.hpp"

namespace isl {

/// Closed axis-aligned rectangle in the complex plane.
struct ComplexBox {
  double re_min, re_max, im_min, im_max;

  bool contains(cd z, double slack = 0.0) const noexcept;
  double width() const noexcept { return re_max - re_min; }
  double height() const noexcept { return im_max - im_min; }
};

/// Winding number of a closed contour given by samples (the last sample joins
/// the first). Throws UnderResolvedContour when a sample is zero or two
/// consecutive samples differ in argument by pi or more.
int winding_number(std::span<const cd> samples);

struct ZeroSearchOptions {
  /// Initial spacing of boundary samples.
  double initial_spacing = 0.05;
  /// Boundary segments are bisected until the argument changes by less than this.
  double max_jump = 0.7853981633974483;
  int max_refine_depth = 24;
  /// Boxes are not split below this size.
  double min_box = 1e-7;
  int max_newton = 100;
};

struct ZeroSearchResult {
  std::vector<cd> zeros;
  /// Argument-principle count of the whole box.
  int argument_count = 0;
  /// Boundary evaluations spent on the top-level box.
  std::size_t boundary_samples = 0;
};

/// Finds every zero of an analytic function inside `box`.
///
/// The argument principle on an adaptively sampled boundary counts zeros;
/// boxes holding more than one are bisected, and each single zero is refined
/// by damped Newton with a central-difference derivative (step
/// 1e-6 * (1 + |z|)) until |f| <= tol. Zeros are returned sorted by real then
/// imaginary part.
///
/// Throws BoundaryZero if |f| < tol on a boundary and no alternative split
/// avoids it, and CountMismatch if refined zeros do not match the count.
ZeroSearchResult find_zeros_in_box(const std::function<cd(cd)>& f, const ComplexBox& box, double tol,
                                   const ZeroSearchOptions& opt = {});

/// Damped Newton iteration with a central-difference derivative. Returns the
/// final iterate; `converged` reports whether |f| <= tol was reached.
cd damped_newton(const std::function<cd(cd)>& f, cd z0, double tol, int max_iter, bool& converged);

}  // namespace isl
