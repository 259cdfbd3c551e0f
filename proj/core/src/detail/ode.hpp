#pragma once

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "isl/errors.hpp"
#include "isl/potential.hpp"

namespace isl::detail {

namespace odeint = boost::numeric::odeint;

/// Integrates y' = sys(y, x) from `from` to `to` (either direction) with a
/// controlled Dormand-Prince 5(4) stepper. Integrator failures and non-finite
/// states surface as StepSizeError.
template <typename State, typename System>
void integrate(System&& sys, State& y, double from, double to, double abs_tol, double rel_tol) {
  if (from == to) return;
  auto stepper = odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_dopri5<State>());
  const double dt = (to - from) / 8.0;
  try {
    odeint::integrate_adaptive(stepper, sys, y, from, to, dt);
  } catch (const std::exception& e) {
    throw StepSizeError(std::string("ODE integration failed: ") + e.what());
  }
  for (const auto& v : y) {
    if (!std::isfinite(std::abs(v))) throw StepSizeError("ODE integration produced a non-finite state");
  }
}

/// Sorted integration nodes on [0, a]: every potential segment end, plus the
/// grid nodes inside the support when `with_grid` is set.
inline std::vector<double> integration_nodes(const RadialPotential& q, bool with_grid) {
  const double a = q.support_radius();
  std::vector<double> pts{0.0, a};
  for (const auto& s : q.segments()) {
    pts.push_back(s.x0);
    pts.push_back(s.x1);
  }
  if (with_grid) {
    for (std::size_t i = 0; i < q.grid().size() && q.grid()[i] < a; ++i) pts.push_back(q.grid()[i]);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  const double eps = 1e-12 * std::max(1.0, a);
  for (double p : pts) {
    if (p < -eps || p > a + eps) continue;
    if (out.empty() || p - out.back() > eps) out.push_back(p);
  }
  return out;
}

/// Potential segment containing the interval [x0, x1]; `hint` walks along.
inline const PotentialSegment* segment_for(const RadialPotential& q, double x0, double x1, std::size_t& hint) {
  const auto& segs = q.segments();
  if (segs.empty()) return nullptr;
  const double mid = 0.5 * (x0 + x1);
  hint = std::min(hint, segs.size() - 1);
  while (hint > 0 && mid < segs[hint].x0) --hint;
  while (hint + 1 < segs.size() && mid > segs[hint].x1) ++hint;
  if (mid < segs[hint].x0 || mid > segs[hint].x1) return nullptr;
  return &segs[hint];
}

}  // namespace isl::detail
