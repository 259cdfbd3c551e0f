#include "isl/integral_equation.hpp"

#include <Eigen/Dense>
#include <string>

#include "isl/errors.hpp"

namespace isl {
namespace {

template <typename Matrix, typename Vector>
std::pair<Vector, double> lu_solve(const Matrix& a, const Vector& b, double max_condition) {
  Eigen::PartialPivLU<Matrix> lu(a);
  const double rc = lu.rcond();
  const double cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (!(cond <= max_condition)) {
    throw SingularSystem("second-kind system is numerically singular (condition number " +
                             std::to_string(cond) + ")",
                         cond);
  }
  Vector x = lu.solve(b);
  // One step of iterative refinement.
  x += lu.solve(Vector(b - a * x));
  return {x, cond};
}

template <typename Matrix, typename Vector>
double relative_residual(const Matrix& a, const Vector& x, const Vector& b) {
  const double r = (a * x - b).cwiseAbs().maxCoeff();
  const double s = b.cwiseAbs().maxCoeff();
  return s > 0.0 ? r / s : r;
}

}  // namespace

std::vector<double> trapezoid_weights(std::size_t n, double h) {
  std::vector<double> w(n, h);
  if (n == 0) return w;
  w.front() *= 0.5;
  w.back() *= 0.5;
  if (n == 1) w.front() = 0.0;
  return w;
}

SecondKindSolution solve_second_kind(const std::function<cd(double, double)>& kernel,
                                     const SampledFunction& rhs, const UniformGrid& grid) {
  if (!(rhs.grid() == grid)) throw ValidationError("solve_second_kind: rhs must live on the solution grid");
  const std::size_t n = grid.size();
  const auto w = trapezoid_weights(n, grid.step());
  Eigen::MatrixXcd a(n, n);
  Eigen::VectorXcd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b(i) = rhs[i];
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = w[j] * kernel(grid[i], grid[j]);
    }
    a(i, i) += 1.0;
  }
  auto [x, cond] = lu_solve(a, b, kMaxCondition);
  const double res = relative_residual(a, x, b);
  std::vector<cd> values(x.data(), x.data() + n);
  return {SampledFunction(grid, std::move(values)), cond, res};
}

RealSecondKindSolution solve_second_kind_real(const std::function<double(std::size_t, std::size_t)>& kernel,
                                              std::span<const double> weights, std::span<const double> rhs,
                                              double max_condition) {
  const std::size_t n = rhs.size();
  if (weights.size() != n) throw ValidationError("solve_second_kind_real: weight/rhs size mismatch");
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    b(i) = rhs[i];
    for (std::size_t j = 0; j < n; ++j) a(i, j) = weights[j] * kernel(i, j);
    a(i, i) += 1.0;
  }
  auto [x, cond] = lu_solve(a, b, max_condition);
  const double res = relative_residual(a, x, b);
  return {std::vector<double>(x.data(), x.data() + n), cond, res};
}

}  // namespace isl
