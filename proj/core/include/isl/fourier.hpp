#pragma once

#include "isl/grid.hpp"

namespace isl {

/// How samples on k >= 0 extend to k < 0.
enum class Symmetry {
  EvenReal,   // g(-k) = g(k)
  Hermitian,  // g(-k) = conj(g(k))
};

struct FourierOptions {
  /// Fraction of k_max where samples start blending into the tail model.
  double taper_start = 0.4;
  /// Fraction of k_max where the tail-model fit window starts.
  double fit_start = 0.5;
  /// Allowed ratio of tail-model uncertainty to the integral scale.
  double tail_tolerance = 0.1;
};

/// Large-k model of g fitted on [fit_start*k_max, k_max]:
///   Re g ~ c2/k^2 + c4/k^4, Im g ~ s1/k + s3/k^3 (Hermitian), or
///   g ~ c2/k^2 + c4/k^4 (EvenReal; complex coefficients allowed).
struct TailModel {
  cd c2{}, c4{};
  double s1 = 0.0, s3 = 0.0;
  double residual_rms = 0.0;

  cd operator()(double k, Symmetry sym) const;
};

struct FourierValue {
  cd value;   // full estimate
  cd tail;    // contribution of |k| > k_max from the tail model
};

/// (1/2pi) * integral over the real line of g(k) e^{ikx} dk, given samples of g
/// on [0, k_max].
///
/// Samples are integrated by Filon-Simpson panels (exact for piecewise
/// quadratic g against the oscillatory factor). Near k_max they are blended
/// smoothly into an algebraic tail model, whose contribution beyond k_max is
/// added in closed form through sine and cosine integrals. At x = 0 the
/// right limit x -> 0+ is returned.
///
/// Construction throws TailTooLarge when the tail-model uncertainty exceeds
/// `tail_tolerance` times (1/pi) * integral of |g|.
class OscillatoryFourier {
 public:
  OscillatoryFourier(const SampledFunction& g, Symmetry sym, FourierOptions opt = {});

  FourierValue evaluate(double x) const;
  cd operator()(double x) const { return evaluate(x).value; }

  const TailModel& tail_model() const noexcept { return model_; }
  double edge_magnitude() const noexcept { return edge_; }
  double tail_uncertainty() const noexcept { return uncertainty_; }
  double integral_scale() const noexcept { return scale_; }
  double k_max() const noexcept { return k_max_; }

 private:
  Symmetry sym_;
  double step_;
  double k_max_;
  std::vector<cd> g_;  // tapered samples on [0, k_max]
  TailModel model_;
  double edge_ = 0.0;
  double uncertainty_ = 0.0;
  double scale_ = 0.0;
};

/// One-shot form of OscillatoryFourier.
FourierValue oscillatory_fourier(const SampledFunction& g, double x, Symmetry sym,
                                 FourierOptions opt = {});

}  // namespace isl
