#pragma once

#include <vector>

#include "isl/grid.hpp"

namespace isl {

/// Grid function on a triangle, one row per x-node.
///
/// Upper orientation (transformation kernels solved for y >= x): row i holds
/// values at y = x_i + j*h, j = 0..len-1, so the diagonal is element 0.
/// Lower orientation (y in [0, x]): row i holds values at y = j*h, j = 0..i,
/// so the diagonal is the last element.
class TriangularKernel {
 public:
  enum class Orientation { Upper, Lower };

  TriangularKernel(UniformGrid x_grid, Orientation orientation);

  const UniformGrid& x_grid() const noexcept { return grid_; }
  Orientation orientation() const noexcept { return orientation_; }
  std::size_t rows() const noexcept { return rows_.size(); }

  void set_row(std::size_t i, std::vector<double> values);
  const std::vector<double>& row(std::size_t i) const { return rows_.at(i); }
  /// y coordinate of element j in row i.
  double y_at(std::size_t i, std::size_t j) const noexcept;

  /// Trace on the diagonal y = x (0 for empty rows).
  std::vector<double> diagonal() const;

 private:
  UniformGrid grid_;
  Orientation orientation_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace isl
