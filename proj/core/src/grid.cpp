#include "isl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "isl/errors.hpp"

namespace isl {

UniformGrid::UniformGrid(double start, double step, std::size_t count)
    : start_(start), step_(step), count_(count) {
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(start)) {
    throw ValidationError("UniformGrid: step must be positive and finite");
  }
  if (count < 2) {
    throw ValidationError("UniformGrid: at least two nodes are required");
  }
}

UniformGrid UniformGrid::covering(double start, double stop, double step) {
  if (!(stop > start) || !(step > 0.0)) {
    throw ValidationError("UniformGrid::covering: need stop > start and step > 0");
  }
  const double intervals = std::ceil((stop - start) / step - 1e-9);
  const auto n = static_cast<std::size_t>(std::max(1.0, intervals));
  return UniformGrid(start, (stop - start) / static_cast<double>(n), n + 1);
}

std::size_t UniformGrid::nearest(double x) const noexcept {
  const double r = std::round((x - start_) / step_);
  if (r <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(r), count_ - 1);
}

bool UniformGrid::is_node(double x, double rel) const noexcept {
  const double r = (x - start_) / step_;
  return std::abs(r - std::round(r)) <= rel && r > -rel &&
         r < static_cast<double>(count_ - 1) + rel;
}

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> out(count_);
  for (std::size_t i = 0; i < count_; ++i) out[i] = at(i);
  return out;
}

SampledFunction::SampledFunction(UniformGrid grid, std::vector<cd> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ValidationError("SampledFunction: " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_.size()));
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError("SampledFunction: non-finite sample");
    }
  }
}

SampledFunction SampledFunction::from_real(UniformGrid grid, std::span<const double> values) {
  return SampledFunction(grid, std::vector<cd>(values.begin(), values.end()));
}

SampledFunction SampledFunction::zeros(UniformGrid grid) {
  return SampledFunction(grid, std::vector<cd>(grid.size(), cd{}));
}

std::vector<double> SampledFunction::real_part() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](cd z) { return z.real(); });
  return out;
}

std::vector<double> SampledFunction::imag_part() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](cd z) { return z.imag(); });
  return out;
}

double SampledFunction::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        try {
          for (std::size_t i = lo; i < hi; ++i) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace isl
