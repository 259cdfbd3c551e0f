#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isl/grid.hpp"

namespace isl {

/// Piece of a potential on which q is linear (constant when q0 == q1).
struct PotentialSegment {
  double x0, x1, q0, q1;
  double at(double x) const noexcept { return q0 + (q1 - q0) * (x - x0) / (x1 - x0); }
};

/// Exact piecewise-constant description: q = heights[i] on (breaks[i-1], breaks[i]],
/// with breaks[-1] = 0.
struct PiecewiseConstant {
  std::vector<double> breaks;
  std::vector<double> heights;
};

/// Real potential sampled on a uniform grid over [0, x_max], vanishing beyond
/// the support radius a. Between nodes q is the linear interpolant; potentials
/// built from pieces keep the exact pieces, so interior jumps are resolved
/// exactly by the ODE solvers.
class RadialPotential {
 public:
  /// Support radius is the last node carrying a nonzero sample (x_max if none).
  RadialPotential(UniformGrid grid, std::vector<double> samples, std::string label = {});

  static RadialPotential zero(double x_max, double step);
  static RadialPotential square_well(double q0, double a, double x_max, double step);
  static RadialPotential piecewise_constant(const PiecewiseConstant& pieces, double x_max, double step,
                                            std::string label = {});
  /// Samples `fn` on the grid and zeros everything beyond `support`.
  template <typename Fn>
  static RadialPotential from_function(Fn&& fn, double support, double x_max, double step, std::string label = {});
  /// Recovered potentials: the support ends where |q| stays below `threshold`.
  static RadialPotential from_reconstruction(UniformGrid grid, std::vector<double> samples, double threshold = 1e-6,
                                             std::string label = {});

  const UniformGrid& grid() const noexcept { return grid_; }
  const std::vector<double>& samples() const noexcept { return samples_; }
  double support_radius() const noexcept { return a_; }
  double x_max() const noexcept { return grid_.back(); }
  const std::string& label() const noexcept { return label_; }
  /// True when every sample vanished and the support fell back to x_max.
  bool support_fallback() const noexcept { return fallback_; }
  bool is_zero() const noexcept { return zero_; }
  /// Integral of x |q(x)| over the support.
  double first_moment() const noexcept { return first_moment_; }
  const std::optional<PiecewiseConstant>& pieces() const noexcept { return pieces_; }

  /// q(x), zero beyond the support.
  double value(double x) const noexcept;
  /// Segments covering [0, a] in increasing order.
  const std::vector<PotentialSegment>& segments() const noexcept { return segments_; }

  RadialPotential scaled(double factor) const;
  RadialPotential with_label(std::string label) const;

 private:
  RadialPotential(UniformGrid grid, std::vector<double> samples, std::string label,
                  std::optional<PiecewiseConstant> pieces);
  void finish();

  UniformGrid grid_;
  std::vector<double> samples_;
  std::string label_;
  std::optional<PiecewiseConstant> pieces_;
  double a_ = 0.0;
  bool fallback_ = false;
  bool zero_ = false;
  double first_moment_ = 0.0;
  std::vector<PotentialSegment> segments_;
};

/// Reads a two-column CSV with header "x,q". Throws FormatError for malformed
/// or non-uniform input and NonRealError for complex entries.
RadialPotential load_potential(const std::filesystem::path& path);
void save_potential(const RadialPotential& q, const std::filesystem::path& path);

struct MomentReport {
  int n;
  double Q;  // integral of x^n |q(x)|
  double growth_exponent_b;
};

struct MomentAnalysis {
  std::vector<MomentReport> reports;
  double growth_exponent_b = 0.0;
  /// b < 1 with q nonzero: growth slower than n^n, so infinitely many
  /// resonances are expected.
  bool infinitely_many_resonances_expected = false;
};

/// Q_n for n = 0..n_max (exact for the piecewise-linear potential) and the
/// exponent b from a least-squares fit of log Q_n ~ b n log n + c1 n + c0 over
/// n in [n_max/2, n_max].
MomentAnalysis moments(const RadialPotential& q, int n_max);

template <typename Fn>
RadialPotential RadialPotential::from_function(Fn&& fn, double support, double x_max, double step,
                                               std::string label) {
  const UniformGrid grid = UniformGrid::covering(0.0, x_max, step);
  std::vector<double> s(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= support * (1.0 + 1e-12)) s[i] = fn(grid[i]);
  }
  return RadialPotential(grid, std::move(s), std::move(label));
}

}  // namespace isl
