#pragma once

#include <functional>
#include <span>
#include <vector>

#include "isl/grid.hpp"

namespace isl {

/// Systems with an estimated condition number above this are refused.
inline constexpr double kMaxCondition = 1e12;

struct SecondKindSolution {
  SampledFunction solution;
  double condition_number;
  /// max_t |g(t) + sum_s w_s K(t,s) g(s) - rhs(t)| / max_t |rhs(t)|, recomputed
  /// after the solve.
  double residual;
};

/// Solves g(t) + integral K(t,s) g(s) ds = rhs(t) on `grid` by the trapezoidal
/// Nystrom method. Throws SingularSystem when the condition number exceeds
/// kMaxCondition.
SecondKindSolution solve_second_kind(const std::function<cd(double, double)>& kernel,
                                     const SampledFunction& rhs, const UniformGrid& grid);

struct RealSecondKindSolution {
  std::vector<double> solution;
  double condition_number;
  double residual;
};

/// Real dense variant with the kernel given by node indices and explicit
/// quadrature weights: g_i + sum_j w_j K(i,j) g_j = rhs_i.
RealSecondKindSolution solve_second_kind_real(const std::function<double(std::size_t, std::size_t)>& kernel,
                                              std::span<const double> weights, std::span<const double> rhs,
                                              double max_condition = kMaxCondition);

/// Trapezoid weights for n equispaced nodes with spacing h.
std::vector<double> trapezoid_weights(std::size_t n, double h);

}  // namespace isl
