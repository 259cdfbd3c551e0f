#include "isl/kernel.hpp"

#include "isl/errors.hpp"

namespace isl {

TriangularKernel::TriangularKernel(UniformGrid x_grid, Orientation orientation)
    : grid_(x_grid), orientation_(orientation), rows_(x_grid.size()) {}

void TriangularKernel::set_row(std::size_t i, std::vector<double> values) {
  if (i >= rows_.size()) throw ValidationError("TriangularKernel: row index out of range");
  if (orientation_ == Orientation::Lower && values.size() != i + 1) {
    throw ValidationError("TriangularKernel: lower row i must hold i + 1 values");
  }
  rows_[i] = std::move(values);
}

double TriangularKernel::y_at(std::size_t i, std::size_t j) const noexcept {
  const double h = grid_.step();
  return orientation_ == Orientation::Upper ? grid_[i] + static_cast<double>(j) * h
                                            : grid_.start() + static_cast<double>(j) * h;
}

std::vector<double> TriangularKernel::diagonal() const {
  std::vector<double> d(rows_.size(), 0.0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].empty()) continue;
    d[i] = orientation_ == Orientation::Upper ? rows_[i].front() : rows_[i].back();
  }
  return d;
}

}  // namespace isl
