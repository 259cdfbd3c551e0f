#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace isl {

using cd = std::complex<double>;

/// Equispaced nodes start + i*step, i = 0..count-1.
class UniformGrid {
 public:
  UniformGrid(double start, double step, std::size_t count);

  /// Grid on [start, stop] whose step is the largest value <= `step` that
  /// divides the interval exactly.
  static UniformGrid covering(double start, double stop, double step);

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return count_; }
  double back() const noexcept { return at(count_ - 1); }
  double at(std::size_t i) const noexcept { return start_ + static_cast<double>(i) * step_; }
  double operator[](std::size_t i) const noexcept { return at(i); }

  /// Index of the node nearest to x (clamped to the grid).
  std::size_t nearest(double x) const noexcept;
  /// True when x lies on a node to within `rel` of the step.
  bool is_node(double x, double rel = 1e-9) const noexcept;

  std::vector<double> nodes() const;

  bool operator==(const UniformGrid&) const = default;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

/// Complex samples on a uniform grid. Values must be finite.
class SampledFunction {
 public:
  SampledFunction(UniformGrid grid, std::vector<cd> values);
  static SampledFunction from_real(UniformGrid grid, std::span<const double> values);
  static SampledFunction zeros(UniformGrid grid);

  const UniformGrid& grid() const noexcept { return grid_; }
  std::span<const cd> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const cd& operator[](std::size_t i) const noexcept { return values_[i]; }

  std::vector<double> real_part() const;
  std::vector<double> imag_part() const;
  double max_abs() const noexcept;

 private:
  UniformGrid grid_;
  std::vector<cd> values_;
};

/// Runs body(i) for i in [0, n). Work is split into contiguous chunks across
/// hardware threads; each index is visited exactly once, so results written to
/// distinct slots are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace isl
