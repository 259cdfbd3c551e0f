#pragma once

#include <span>
#include <vector>

namespace isl {

/// First derivative of equispaced samples by five-point stencils: central in
/// the interior, one-sided within two nodes of either end. Needs >= 5 samples.
std::vector<double> derivative4(std::span<const double> values, double step);

/// Composite trapezoid rule over equispaced samples.
double trapezoid(std::span<const double> values, double step);

/// Composite Simpson rule; an even sample count finishes with the 3/8 rule on
/// the last four samples.
double simpson(std::span<const double> values, double step);

}  // namespace isl
